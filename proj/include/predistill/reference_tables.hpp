#pragma once

#include <map>
#include <string>
#include <vector>

#include "predistill/photonic.hpp"
#include "predistill/xz_composite.hpp"

namespace predistill {

// Printed values shipped with the library, for comparison and seeding.
struct ReferenceTables {
    struct PulseTableRow {
        double theta_star_pi;
        double theta_pi;
        std::vector<double> phase_offsets_pi;
    };
    struct GateSequences {
        std::vector<double> three_pulse;  // theta, phi_1, ...
        std::vector<double> five_pulse;
        std::vector<double> seven_pulse;
    };

    int version = 0;
    std::vector<PulseTableRow> three_pulse;
    std::vector<PulseTableRow> five_pulse;
    GateSequences t_gate;
    GateSequences h_gate;
    std::map<std::string, XZSequence> xz_three_segment;
    std::map<std::string, CouplerDesign> coupler_designs;  // "two", "a", "b", "c"
};

const ReferenceTables& reference_tables();

}  // namespace predistill
