#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "predistill/su2.hpp"

namespace predistill {

// theta_{phi_1} pi_{phi_2} ... pi_{phi_n} ... pi_{phi_2} theta_{phi_1}: 2n - 1 pulses.
// A single phase gives the bare pulse theta_{phi_1}.
struct SymmetricSequence {
    double theta = 0.0;
    std::vector<double> phases;
    GateTarget target;

    int half_length() const { return static_cast<int>(phases.size()); }
    int pulse_count() const { return 2 * half_length() - 1; }
};

struct Pulse {
    double area;
    double phase;
};

std::vector<Pulse> pulse_train(const SymmetricSequence& seq);

// Every pulse area scaled by (1 + eps); leftmost factor first.
Unitary2 apply_with_error(const SymmetricSequence& seq, double eps);

// c_k = (1/k!) d^k U / d eps^k at eps = 0, k = 0..order, from exact series products.
std::vector<Mat2> error_taylor_coefficients(const SymmetricSequence& seq, int order);

SymmetricSequence single_pulse(const GateTarget& target);

// Both phi_1 branches; the first element is the branch used by the reference tables.
std::vector<SymmetricSequence> solve_three_pulse(const GateTarget& target);

// Roots of the alpha self-consistency condition; alpha > 0 solutions first.
std::vector<SymmetricSequence> solve_five_pulse(const GateTarget& target);

struct FivePulseAngles {
    double alpha;
    double beta;
    double theta;
    double phi2;
};

// Left-hand side minus right-hand side of the five defining equations; the
// complex equation contributes its real and imaginary parts.
std::array<double, 6> five_pulse_residuals(const FivePulseAngles& angles, const GateTarget& target);
// Self-consistency function whose zeros in alpha yield five-pulse solutions.
double five_pulse_alpha_condition(double alpha, double theta_star);
// Implied target angle cos(theta*/2) = cos(alpha + beta) sin(theta).
double five_pulse_implied_theta_star(const FivePulseAngles& angles);
SymmetricSequence five_pulse_sequence(const FivePulseAngles& angles, const GateTarget& target);

SymmetricSequence solve_seven_pulse(const GateTarget& target, const std::optional<SymmetricSequence>& seed,
                                    std::uint64_t rng_seed = 20240611);

struct RobustnessReport {
    std::vector<std::pair<int, double>> orders;  // (k, max-entry norm of d^k U / d eps^k)
    int verified_order = 0;
};

inline constexpr double certification_tolerance = 1e-6;

RobustnessReport derivative_report(const SymmetricSequence& seq, int max_order);

enum class TableKind { ThreePulse, FivePulse };

struct TableRow {
    double theta_star_pi;
    double theta_pi;
    std::vector<double> phase_offsets_pi;  // (phi_i - phi*) / pi wrapped to (-1, 1]
};

std::vector<TableRow> table_rows(TableKind kind);

}  // namespace predistill
