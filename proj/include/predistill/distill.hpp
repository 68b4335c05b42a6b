#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "predistill/su2.hpp"

namespace predistill {

enum class CodeKind { FiveQubitT, FifteenToOneH };

struct DistillationCode {
    CodeKind kind = CodeKind::FiveQubitT;
    double threshold_error = 0.0;
    int arity = 5;
};

DistillationCode five_qubit_code();
DistillationCode fifteen_to_one_code();

double five_qubit_output_error(double eps);
double five_qubit_success_prob(double eps);
double fifteen_to_one_output_error(double eps);
double output_error(const DistillationCode& code, double eps);

// Smallest positive fixed point of the 15-to-1 map, found by bisection.
double fifteen_to_one_threshold();

struct IterationPlan {
    double input_error = 0.0;
    double target_error = 0.0;
    std::optional<int> levels;  // empty when distillation diverges
    std::uint64_t qubits_per_logical = 1;
    std::vector<double> trajectory;  // error after each round, starting with the input

    bool divergent() const { return !levels.has_value(); }
};

IterationPlan iterations_to_threshold(double eps, double target, const DistillationCode& code);

// Input errors at which the required level count steps from i-1 to i, i = 1..count.
std::vector<double> transition_thresholds(const DistillationCode& code, double target, int count);

// Twirl over {I, T, T^dagger} with T = e^{i pi/4} S H.
Mat2 dephase(const Mat2& rho);

}  // namespace predistill
