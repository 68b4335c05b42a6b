#include "predistill/xz_composite.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "predistill/errors.hpp"
#include "predistill/least_squares.hpp"

namespace predistill {

using std::numbers::pi;

Unitary2 xz_segment_unitary(const XZSegment& seg, double eps) {
    return exp_i_pauli(seg.theta * std::cos(seg.phi), 0.0, seg.theta * std::sin(seg.phi) + eps);
}

Mat2 xz_segment_derivative(const XZSegment& seg) {
    return exp_i_pauli_derivative(seg.theta * std::cos(seg.phi), 0.0, seg.theta * std::sin(seg.phi), 0.0, 0.0, 1.0);
}

Unitary2 xz_sequence_unitary(const XZSequence& seq, double eps) {
    Unitary2 u = Mat2::identity();
    for (const XZSegment& s : seq.segments) u = u * xz_segment_unitary(s, eps);
    return u;
}

Mat2 xz_sequence_derivative(const XZSequence& seq) {
    // Product rule: sum over k of U_1 ... U_k' ... U_N.
    Mat2 left = Mat2::identity();
    Mat2 total = Mat2::zero();
    const std::size_t n = seq.segments.size();
    for (std::size_t k = 0; k < n; ++k) {
        Mat2 term = left * xz_segment_derivative(seq.segments[k]);
        for (std::size_t j = k + 1; j < n; ++j) term = term * xz_segment_unitary(seq.segments[j], 0.0);
        total += term;
        left = left * xz_segment_unitary(seq.segments[k], 0.0);
    }
    return total;
}

MagicFrame xz_magic_frame() {
    const double b = t_state_beta();
    const cplx w = std::polar(1.0, pi / 4.0);
    return {{std::cos(b), -std::conj(w) * std::sin(b)}, {w * std::sin(b), std::cos(b)}, Convention::XZ};
}

std::vector<TwoSegmentSolution> two_segment_synthesis(double phi1) {
    constexpr double singular = 1e-12;
    const double s1 = std::sin(phi1);
    if (std::abs(s1) < singular) throw std::domain_error("branch singularity at this phi1");
    const double cot1 = std::cos(phi1) / s1;
    const double k = 1.0 + std::sqrt(3.0);
    const Unitary2 goal = target_unitary(t_gate_target(Convention::XZ));

    std::vector<TwoSegmentSolution> out;
    for (CotBranch branch : {CotBranch::Plus, CotBranch::Minus}) {
        const double sign = branch == CotBranch::Plus ? 1.0 : -1.0;
        const double den = k - sign * cot1;
        if (std::abs(den) < singular) throw std::domain_error("branch singularity at this phi1");
        const double cot2 = (k * cot1 + 2.0 * sign) / den;
        // cot and arccot fix angles only modulo pi; keep the combination that
        // reproduces the gate.
        const double base2 = std::atan2(1.0, cot2);
        bool found = false;
        for (double phi2 : {base2, base2 - pi}) {
            const double t1 = std::atan2(1.0, -s1);
            const double t2 = std::atan2(1.0, std::sin(phi2));
            for (double theta1 : {t1, t1 - pi}) {
                for (double theta2 : {t2, t2 - pi}) {
                    XZSequence seq;
                    if (branch == CotBranch::Plus)
                        seq.segments = {{theta1, phi1}, {theta2, phi2}};
                    else
                        seq.segments = {{-theta2, phi2}, {-theta1, phi1}};
                    if (phase_adjusted_distance(xz_sequence_unitary(seq, 0.0), goal) <= 1e-10) {
                        out.push_back({branch, std::move(seq)});
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
    }
    if (out.empty()) throw NumericalFailure("two-segment relations did not reproduce the target");
    return out;
}

namespace {

constexpr int robust_residual_count = 16;

void fill_robust_residual(const XZSequence& seq, Eigen::VectorXd& r) {
    const Unitary2 u = xz_sequence_unitary(seq, 0.0);
    const Unitary2 goal = target_unitary(seq.target);
    const Mat2 mismatch = u - aligning_phase(u, goal) * goal;
    const Mat2 slope = xz_sequence_derivative(seq);
    Eigen::Index i = 0;
    for (const Mat2* m : {&mismatch, &slope})
        for (const cplx& e : m->entries()) {
            r[i++] = e.real();
            r[i++] = e.imag();
        }
}

}  // namespace

double robust_residual(const XZSequence& seq) {
    Eigen::VectorXd r(robust_residual_count);
    fill_robust_residual(seq, r);
    return r.lpNorm<Eigen::Infinity>();
}

RobustSolveResult three_segment_robust_solve(const XZSequence& seed, const RobustSolveOptions& options) {
    if (seed.segments.size() != 3) throw std::invalid_argument("robust solve needs a three-segment seed");
    auto unpack = [&](const Eigen::VectorXd& x) {
        XZSequence seq{{}, seed.target};
        for (Eigen::Index k = 0; k < 3; ++k) seq.segments.push_back({x[2 * k], x[2 * k + 1]});
        return seq;
    };
    const ResidualFunction residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
        fill_robust_residual(unpack(x), r);
    };
    Eigen::VectorXd start(6);
    for (Eigen::Index k = 0; k < 3; ++k) {
        start[2 * k] = seed.segments[static_cast<std::size_t>(k)].theta;
        start[2 * k + 1] = seed.segments[static_cast<std::size_t>(k)].phi;
    }

    std::mt19937_64 rng(options.rng_seed);
    std::normal_distribution<double> jitter(0.0, 1e-3);
    double best = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= options.restarts; ++attempt) {
        Eigen::VectorXd x0 = start;
        if (attempt > 0)
            for (Eigen::Index k = 0; k < x0.size(); ++k) x0[k] += attempt * jitter(rng);
        const auto fit = levenberg_marquardt(residual, robust_residual_count, x0);
        best = std::min(best, fit.max_residual);
        if (fit.max_residual <= options.tolerance) return {unpack(fit.x), fit.max_residual};
    }
    throw NumericalFailure(fmt::format("three-segment robust solve failed, best residual {:.3e}", best));
}

double single_segment_gap(const Unitary2& target) {
    // Up to global phase the segment is periodic in theta with period pi, and
    // a negative area is the same as phi + pi.
    constexpr int theta_steps = 200;
    constexpr int phi_steps = 400;
    std::vector<std::pair<double, XZSegment>> grid;
    for (int i = 0; i <= theta_steps; ++i)
        for (int j = 0; j < phi_steps; ++j) {
            const XZSegment s{pi * i / theta_steps, 2.0 * pi * j / phi_steps};
            grid.emplace_back(phase_adjusted_distance(xz_segment_unitary(s, 0.0), target), s);
        }
    std::partial_sort(grid.begin(), grid.begin() + 16, grid.end(),
                      [](const auto& l, const auto& r) { return l.first < r.first; });

    const ResidualFunction residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
        const Unitary2 u = xz_segment_unitary({x[0], x[1]}, 0.0);
        const Mat2 d = u - aligning_phase(u, target) * target;
        Eigen::Index i = 0;
        for (const cplx& e : d.entries()) {
            r[i++] = e.real();
            r[i++] = e.imag();
        }
    };
    double best = grid.front().first;
    for (int c = 0; c < 16; ++c) {
        Eigen::VectorXd x0(2);
        x0 << grid[static_cast<std::size_t>(c)].second.theta, grid[static_cast<std::size_t>(c)].second.phi;
        const auto fit = levenberg_marquardt(residual, 8, x0);
        best = std::min(best, phase_adjusted_distance(xz_segment_unitary({fit.x[0], fit.x[1]}, 0.0), target));
    }
    return best;
}

}  // namespace predistill
