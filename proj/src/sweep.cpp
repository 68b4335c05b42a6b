#include "predistill/sweep.hpp"

namespace predistill {

SweepRow evaluate_gate(double error, const Unitary2& gate, const Unitary2& target, const MagicFrame& frame,
                       const DistillationCode& code, double distill_target, bool phase_free) {
    SweepRow row;
    row.error = error;
    row.frobenius = phase_free ? phase_adjusted_fidelity(gate, target) : frobenius_fidelity(gate, target);
    row.trace = trace_fidelity(gate, target);
    row.tmagic = t_magic_error(gate, frame);
    row.magic_fidelity = magic_t_gate_fidelity(gate, frame);
    row.levels = iterations_to_threshold(row.tmagic, distill_target, code).levels;
    return row;
}

}  // namespace predistill
