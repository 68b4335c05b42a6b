#pragma once

#include <cstdint>
#include <vector>

#include "predistill/su2.hpp"

namespace predistill {

// exp(i[theta (cos phi X + sin phi Z) + eps Z]); theta is signed.
struct XZSegment {
    double theta = 0.0;
    double phi = 0.0;
};

struct XZSequence {
    std::vector<XZSegment> segments;
    GateTarget target = t_gate_target(Convention::XZ);
};

Unitary2 xz_segment_unitary(const XZSegment& seg, double eps);
// d/d eps of the segment unitary at eps = 0.
Mat2 xz_segment_derivative(const XZSegment& seg);

// Ordered product, first segment leftmost.
Unitary2 xz_sequence_unitary(const XZSequence& seq, double eps);
Mat2 xz_sequence_derivative(const XZSequence& seq);

MagicFrame xz_magic_frame();

enum class CotBranch { Plus, Minus };

struct TwoSegmentSolution {
    CotBranch branch;
    XZSequence sequence;
};

// Exact two-segment realizations of the X-Z T gate for a free first axis
// angle, one per cot(phi_2) branch. The minus branch is realized by the
// segment pair in reverse order with negated areas.
std::vector<TwoSegmentSolution> two_segment_synthesis(double phi1);

struct RobustSolveOptions {
    double tolerance = 1e-9;
    int restarts = 50;
    std::uint64_t rng_seed = 7;
};

struct RobustSolveResult {
    XZSequence sequence;
    double residual;  // max of target mismatch and |dU/d eps| entries
};

// Combined residual: phase-aligned U - T and dU/d eps at eps = 0.
double robust_residual(const XZSequence& seq);

RobustSolveResult three_segment_robust_solve(const XZSequence& seed, const RobustSolveOptions& options = {});

// Smallest phase-adjusted Frobenius distance between a single segment and
// the target, by grid search and local refinement.
double single_segment_gap(const Unitary2& target);

}  // namespace predistill
