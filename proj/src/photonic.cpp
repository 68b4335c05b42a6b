#include "predistill/photonic.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <random>
#include <stdexcept>

#include "predistill/errors.hpp"
#include "predistill/least_squares.hpp"

namespace predistill {

namespace {

constexpr double nm_per_um = 1000.0;

void check_range(double w1_nm, double w2_nm, const WarningSink& warn) {
    if (!warn) return;
    for (double w : {w1_nm, w2_nm})
        if (!within_fit_range(w))
            warn(fmt::format("width {:.3f} nm is outside the fitted range [{}, {}] nm", w, fit_min_nm, fit_max_nm));
}

// Single-waveguide quartic of the detuning fit and its derivative.
double detuning_leg(double w, double c1, double c2, double c3, double c4) {
    return w * (c1 + w * (c2 + w * (c3 + w * c4)));
}

double detuning_leg_slope(double w, double c1, double c2, double c3, double c4) {
    return c1 + w * (2.0 * c2 + w * (3.0 * c3 + w * 4.0 * c4));
}

void append_entries(const Mat2& m, double scale, Eigen::VectorXd& r, Eigen::Index& i) {
    for (const cplx& e : m.entries()) {
        r[i++] = scale * e.real();
        r[i++] = scale * e.imag();
    }
}

Mat2 aligned_mismatch(const Unitary2& u, const Unitary2& goal) { return u - aligning_phase(u, goal) * goal; }

}  // namespace

bool within_fit_range(double w_nm) { return w_nm >= fit_min_nm && w_nm <= fit_max_nm; }

double delta_of_widths(Micrometers w1, Micrometers w2) {
    return detuning_leg(w2.value, 3.94502808, -18.0203544, 27.94843595, -15.42295066) +
           detuning_leg(w1.value, -3.94502818, 18.02035521, -27.94843797, 15.42295233);
}

double omega_of_widths(Micrometers w1, Micrometers w2) {
    const double s = w1.value + w2.value;
    return 0.38044405 + s * (-1.48138422 + s * (2.51783632 + s * (-1.9993113 + s * 0.60771393)));
}

double omega_common_slope(Micrometers w1, Micrometers w2) {
    const double s = w1.value + w2.value;
    const double d_ds = -1.48138422 + s * (2.0 * 2.51783632 + s * (3.0 * -1.9993113 + s * 4.0 * 0.60771393));
    return 2.0 * d_ds;
}

double delta_common_slope(Micrometers w1, Micrometers w2) {
    return detuning_leg_slope(w2.value, 3.94502808, -18.0203544, 27.94843595, -15.42295066) +
           detuning_leg_slope(w1.value, -3.94502818, 18.02035521, -27.94843797, 15.42295233);
}

Unitary2 coupler_segment_unitary(const CouplerSegment& seg, Nanometers dw, const WarningSink& warn) {
    const double w1 = seg.w1_nm + dw.value;
    const double w2 = seg.w2_nm + dw.value;
    check_range(w1, w2, warn);
    const Micrometers a{w1 / nm_per_um};
    const Micrometers b{w2 / nm_per_um};
    return exp_i_pauli(-seg.z_um * omega_of_widths(a, b), 0.0, seg.z_um * delta_of_widths(a, b));
}

Mat2 coupler_segment_derivative(const CouplerSegment& seg) {
    const Micrometers a{seg.w1_nm / nm_per_um};
    const Micrometers b{seg.w2_nm / nm_per_um};
    const double z = seg.z_um;
    return exp_i_pauli_derivative(-z * omega_of_widths(a, b), 0.0, z * delta_of_widths(a, b),
                                  -z * omega_common_slope(a, b) / nm_per_um, 0.0,
                                  z * delta_common_slope(a, b) / nm_per_um);
}

Unitary2 design_unitary(const CouplerDesign& design, Nanometers dw, const WarningSink& warn) {
    Unitary2 u = Mat2::identity();
    for (const CouplerSegment& s : design.segments) u = u * coupler_segment_unitary(s, dw, warn);
    return u;
}

Mat2 design_derivative(const CouplerDesign& design) {
    Mat2 left = Mat2::identity();
    Mat2 total = Mat2::zero();
    const std::size_t n = design.segments.size();
    for (std::size_t k = 0; k < n; ++k) {
        Mat2 term = left * coupler_segment_derivative(design.segments[k]);
        for (std::size_t j = k + 1; j < n; ++j) term = term * coupler_segment_unitary(design.segments[j], {0.0});
        total += term;
        left = left * coupler_segment_unitary(design.segments[k], {0.0});
    }
    return total;
}

double total_length_um(const CouplerDesign& design) {
    double total = 0.0;
    for (const CouplerSegment& s : design.segments) total += s.z_um;
    return total;
}

namespace {

// Grid candidates for one parameter expressed in grid units.
std::vector<double> grid_options(double units) {
    const double nearest = std::round(units);
    if (std::abs(units - nearest) < 1e-9) return {nearest};
    return {std::floor(units), std::ceil(units)};
}

}  // namespace

CouplerDesign round_to_grid(const CouplerDesign& design, const GateTarget& target) {
    const Unitary2 goal = target_unitary(target);
    const double grid = design.grid_nm;
    std::vector<std::vector<double>> options;
    for (const CouplerSegment& s : design.segments) {
        options.push_back(grid_options(s.w1_nm / grid));
        options.push_back(grid_options(s.w2_nm / grid));
        options.push_back(grid_options(s.z_um * nm_per_um / grid));
    }
    std::vector<std::size_t> pick(options.size(), 0);
    CouplerDesign best = design;
    double best_fidelity = -std::numeric_limits<double>::infinity();
    CouplerDesign trial = design;
    while (true) {
        for (std::size_t k = 0; k < design.segments.size(); ++k) {
            trial.segments[k].w1_nm = options[3 * k][pick[3 * k]] * grid;
            trial.segments[k].w2_nm = options[3 * k + 1][pick[3 * k + 1]] * grid;
            trial.segments[k].z_um = options[3 * k + 2][pick[3 * k + 2]] * grid / nm_per_um;
        }
        const double f = phase_adjusted_fidelity(design_unitary(trial, {0.0}), goal);
        if (f > best_fidelity || (f == best_fidelity && total_length_um(trial) < total_length_um(best))) {
            best = trial;
            best_fidelity = f;
        }
        std::size_t digit = 0;
        while (digit < pick.size() && ++pick[digit] == options[digit].size()) pick[digit++] = 0;
        if (digit == pick.size()) break;
    }
    return best;
}

CouplerDesign round_to_nearest(const CouplerDesign& design) {
    CouplerDesign out = design;
    const double grid = design.grid_nm;
    for (CouplerSegment& s : out.segments) {
        s.w1_nm = std::round(s.w1_nm / grid) * grid;
        s.w2_nm = std::round(s.w2_nm / grid) * grid;
        s.z_um = std::round(s.z_um * nm_per_um / grid) * grid / nm_per_um;
    }
    return out;
}

SynthesizedDesign synthesize_two_segment(const GateTarget& target) {
    const Unitary2 goal = target_unitary(target);
    if (phase_adjusted_distance(goal, Mat2::identity()) < 1e-9) throw std::invalid_argument("trivial target");

    // The fitted detuning is antisymmetric only to about seven digits, so an
    // exactly mirrored pair misses the target by ~1e-7. The two lengths are
    // therefore solved independently; they differ by far less than the grid.
    auto mirrored = [](double w1, double w2, double z1, double z2) {
        return CouplerDesign{{{w1, w2, z1}, {w2, w1, z2}}, 1};
    };
    struct Member {
        double w1, w2, z1, z2;
    };
    std::vector<Member> family;
    std::vector<Member> previous;
    constexpr double exact = 1e-9;

    // Walk w1 across the fitted range in 0.1 nm steps, continuing each
    // solution branch and reseeding from a coarse grid every nanometer.
    for (int step = 0; step <= 1000; ++step) {
        const double w1 = fit_min_nm + 0.1 * step;
        std::vector<Eigen::Vector3d> seeds;
        for (const Member& m : previous) seeds.emplace_back(m.w2, m.z1, m.z2);
        if (step % 10 == 0)
            for (double w2 = 355.0; w2 < fit_max_nm; w2 += 20.0)
                for (double z = 2.0; z <= 60.0; z += 2.0) seeds.emplace_back(w2, z, z);

        const ResidualFunction residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
            Eigen::Index i = 0;
            append_entries(aligned_mismatch(design_unitary(mirrored(w1, x[0], x[1], x[2]), {0.0}), goal), 1.0, r, i);
        };
        std::vector<Member> current;
        for (const Eigen::Vector3d& s : seeds) {
            const auto fit = levenberg_marquardt(residual, 8, Eigen::VectorXd(s), {1e-15, 600});
            const Member m{w1, fit.x[0], fit.x[1], fit.x[2]};
            if (fit.max_residual > exact || !within_fit_range(m.w2) || m.z1 <= 0.0 || m.z2 <= 0.0) continue;
            const bool seen = std::any_of(current.begin(), current.end(), [&](const Member& o) {
                return std::abs(o.w2 - m.w2) < 1e-6 && std::abs(o.z1 - m.z1) < 1e-6;
            });
            if (!seen) current.push_back(m);
        }
        family.insert(family.end(), current.begin(), current.end());
        previous = std::move(current);
    }
    if (family.empty()) throw NumericalFailure("no two-segment coupler realizes the target");

    // Keep the shortest branch of the family.
    double shortest = std::numeric_limits<double>::infinity();
    for (const Member& m : family) shortest = std::min(shortest, m.z1 + m.z2);
    SynthesizedDesign best;
    double best_fidelity = -std::numeric_limits<double>::infinity();
    for (const Member& m : family) {
        if (m.z1 + m.z2 > shortest + 10.0) continue;
        const CouplerDesign exact_design = mirrored(m.w1, m.w2, m.z1, m.z2);
        const CouplerDesign rounded = round_to_grid(exact_design, target);
        const double f = phase_adjusted_fidelity(design_unitary(rounded, {0.0}), goal);
        if (f > best_fidelity) {
            best_fidelity = f;
            best.exact = exact_design;
            best.rounded = rounded;
            best.residual = phase_adjusted_distance(design_unitary(exact_design, {0.0}), goal);
        }
    }
    return best;
}

double robust_design_residual(const CouplerDesign& design, const GateTarget& target) {
    const Mat2 mismatch = aligned_mismatch(design_unitary(design, {0.0}), target_unitary(target));
    return std::max(max_abs(mismatch), max_abs(design_derivative(design)));
}

SynthesizedDesign synthesize_four_segment_robust(const GateTarget& target, const CouplerDesign& seed,
                                                 const WarningSink& warn) {
    if (seed.segments.size() != 4) throw std::invalid_argument("robust coupler synthesis needs a four-segment seed");
    const Unitary2 goal = target_unitary(target);
    auto unpack = [&](const Eigen::VectorXd& x) {
        CouplerDesign d{{}, seed.grid_nm};
        for (Eigen::Index k = 0; k < 4; ++k) d.segments.push_back({x[3 * k], x[3 * k + 1], x[3 * k + 2]});
        return d;
    };
    // The width derivative is weighted up so both conditions converge together.
    constexpr double slope_weight = 10.0;
    const ResidualFunction residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
        const CouplerDesign d = unpack(x);
        Eigen::Index i = 0;
        append_entries(aligned_mismatch(design_unitary(d, {0.0}), goal), 1.0, r, i);
        append_entries(design_derivative(d), slope_weight, r, i);
    };
    Eigen::VectorXd start(12);
    for (Eigen::Index k = 0; k < 4; ++k) {
        const CouplerSegment& s = seed.segments[static_cast<std::size_t>(k)];
        start.segment<3>(3 * k) << s.w1_nm, s.w2_nm, s.z_um;
    }

    constexpr double tolerance = 1e-8;
    constexpr int restarts = 20;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> jitter(0.0, 0.05);
    double best = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= restarts; ++attempt) {
        Eigen::VectorXd x0 = start;
        if (attempt > 0)
            for (Eigen::Index k = 0; k < x0.size(); ++k) x0[k] += attempt * jitter(rng);
        const auto fit = levenberg_marquardt(residual, 16, x0);
        const CouplerDesign exact = unpack(fit.x);
        const double res = robust_design_residual(exact, target);
        best = std::min(best, res);
        if (res > tolerance) continue;
        for (const CouplerSegment& s : exact.segments) check_range(s.w1_nm, s.w2_nm, warn);
        return {exact, round_to_grid(exact, target), res};
    }
    throw NumericalFailure(fmt::format("four-segment robust synthesis failed, best residual {:.3e}", best));
}

SweepResult width_error_sweep(const CouplerDesign& design, const std::vector<double>& dw_nm, const GateTarget& target,
                              double distill_target, const WarningSink& warn) {
    SweepResult result{"photonic", "", {}};
    std::vector<double> grid = dw_nm;
    std::sort(grid.begin(), grid.end());
    const Unitary2 goal = target_unitary(target);
    const MagicFrame frame = magic_frame_for(target);
    const DistillationCode code = five_qubit_code();
    for (double dw : grid)
        result.rows.push_back(
            evaluate_gate(dw, design_unitary(design, {dw}, warn), goal, frame, code, distill_target, true));
    return result;
}

}  // namespace predistill
