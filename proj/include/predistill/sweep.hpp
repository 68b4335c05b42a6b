#pragma once

#include <optional>
#include <string>
#include <vector>

#include "predistill/distill.hpp"
#include "predistill/su2.hpp"

namespace predistill {

struct SweepRow {
    double error = 0.0;
    double frobenius = 0.0;
    double trace = 0.0;
    double tmagic = 0.0;
    double magic_fidelity = 0.0;
    std::optional<int> levels;  // empty when divergent
};

struct SweepResult {
    std::string platform;
    std::string design_id;
    std::vector<SweepRow> rows;
};

// Metrics for one gate. With phase_free the Frobenius column is minimized
// over global phase.
SweepRow evaluate_gate(double error, const Unitary2& gate, const Unitary2& target, const MagicFrame& frame,
                       const DistillationCode& code, double distill_target, bool phase_free);

}  // namespace predistill
