#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "predistill/su2.hpp"

using namespace predistill;
using std::numbers::pi;

namespace {

const double t_theta = std::acos(1.0 / std::sqrt(3.0));

void expect_near(const Mat2& a, const Mat2& b, double tol) { EXPECT_LE(oracle::norm_of_difference(a, b), tol); }

}  // namespace

TEST(Rotation, ZeroAngleIsIdentity) {
    for (double phi : {0.0, 0.7, -2.1}) expect_near(rotation(0.0, phi), Mat2::identity(), 1e-15);
}

TEST(Rotation, PiPulseAboutX) {
    const Mat2 u = rotation(pi, 0.0);
    EXPECT_NEAR(std::abs(u.m00), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u.m11), 0.0, 1e-15);
    expect_near(Mat2{0.0, cplx{0, -1}, cplx{0, -1}, 0.0}, u, 1e-15);
}

TEST(Rotation, MatchesSeriesExponential) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    for (int i = 0; i < 50; ++i) {
        const double theta = angle(rng);
        const double phi = angle(rng);
        expect_near(rotation(theta, phi), oracle::rotation(theta, phi), 1e-12);
        expect_near(rotation(theta, phi) * rotation(-theta, phi), Mat2::identity(), 1e-12);
    }
}

TEST(Rotation, TGateTargetEntries) {
    const double b = t_state_beta();
    const cplx w = std::polar(1.0, pi / 4.0);
    const Mat2 expected{std::cos(b), -std::conj(w) * std::sin(b), w * std::sin(b), std::cos(b)};
    expect_near(rotation(t_theta, 3.0 * pi / 4.0), expected, 1e-12);
    expect_near(target_unitary(t_gate_target()), expected, 1e-12);
}

TEST(RotationWithDetuning, ReducesToRotation) {
    expect_near(rotation_with_detuning(1.3, 0.0, 0.4), rotation(1.3, 0.4), 1e-15);
    const double d = 0.37;
    expect_near(rotation_with_detuning(0.0, d, 1.1), Mat2{std::polar(1.0, d), 0.0, 0.0, std::polar(1.0, -d)}, 1e-15);
}

TEST(RotationWithDetuning, ClosedFormEntry) {
    const Mat2 u = rotation_with_detuning(pi / 2.0, pi / 3.0, pi / 5.0);
    const Mat2 r = oracle::rotation(pi / 2.0, pi / 5.0);
    const cplx expected = std::polar(1.0, pi / 3.0) * std::cos(pi / 4.0);
    EXPECT_NEAR(std::abs(u.m00 - expected), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(u.m00 - std::polar(1.0, pi / 3.0) * r.m00), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u.m11 - std::polar(1.0, -pi / 3.0) * r.m11), 0.0, 1e-12);
    EXPECT_LE(unitarity_defect(u), 1e-14);
}

TEST(Compose, OrderAndEdgeCases) {
    const Mat2 u = rotation(0.8, 0.3);
    const std::vector<Mat2> one{u};
    expect_near(compose(one), u, 0.0);
    const std::vector<Mat2> pair{u, u.adjoint()};
    expect_near(compose(pair), Mat2::identity(), 1e-12);
    const std::vector<Mat2> pis{rotation(pi, 0.0), rotation(pi, 0.0)};
    expect_near(compose(pis), -1.0 * Mat2::identity(), 1e-15);
    const Mat2 a = rotation(0.4, 0.1);
    const Mat2 b = rotation(1.2, 2.0);
    const std::vector<Mat2> ab{a, b};
    expect_near(compose(ab), a * b, 1e-15);
    EXPECT_THROW(
        {
            try {
                compose(std::span<const Unitary2>{});
            } catch (const std::invalid_argument& e) {
                EXPECT_STREQ(e.what(), "empty product");
                throw;
            }
        },
        std::invalid_argument);
}

TEST(Fidelity, Frobenius) {
    const Mat2 u = rotation(0.9, 1.7);
    EXPECT_NEAR(frobenius_fidelity(u, u), 1.0, 1e-15);
    // (2U)(2U)^dagger = 4I, trace 8
    EXPECT_NEAR(frobenius_fidelity(u, -1.0 * u), 1.0 - std::sqrt(2.0), 1e-14);
    // |G - I|^2 summed over entries is 4
    EXPECT_NEAR(frobenius_fidelity(rotation(pi, 0.0), Mat2::identity()), 0.0, 1e-15);
    const Mat2 g = rotation(0.7, 0.2);
    const Mat2 t = rotation(1.1, -0.4);
    double sum = 0.0;
    for (const cplx& e : (g - t).entries()) sum += std::norm(e);
    EXPECT_NEAR(frobenius_fidelity(g, t), 1.0 - std::sqrt(sum / 4.0), 1e-15);
}

TEST(Fidelity, TraceUsesModulus) {
    const Mat2 u = rotation(0.9, 1.7);
    EXPECT_NEAR(trace_fidelity(u, u), 0.0, 1e-15);
    EXPECT_NEAR(trace_fidelity(rotation(pi, 0.0), Mat2::identity()), 1.0, 1e-15);
    EXPECT_NEAR(trace_fidelity(rotation(pi / 2.0, 0.0), Mat2::identity()), 1.0 - std::cos(pi / 4.0), 1e-15);
    EXPECT_NEAR(trace_fidelity(rotation(pi / 2.0, 0.0), Mat2::identity()), 0.29289, 1e-5);
    EXPECT_NEAR(trace_fidelity(std::polar(1.0, 0.6) * u, u), 0.0, 1e-15);
}

TEST(Fidelity, PhaseAdjustedDistanceMatchesPhaseScan) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 20; ++i) {
        const Mat2 g = rotation(angle(rng), angle(rng));
        const Mat2 t = rotation(angle(rng), angle(rng));
        double best = 1e9;
        for (int k = 0; k < 20000; ++k) {
            const Mat2 d = g - std::polar(1.0, 2.0 * pi * k / 20000.0) * t;
            double s = 0.0;
            for (const cplx& e : d.entries()) s += std::norm(e);
            best = std::min(best, std::sqrt(s / 4.0));
        }
        EXPECT_NEAR(phase_adjusted_distance(g, t), best, 1e-7);
        EXPECT_LE(phase_adjusted_distance(g, t), best + 1e-15);
    }
    const Mat2 u = rotation(1.0, 2.0);
    EXPECT_NEAR(phase_adjusted_distance(std::polar(1.0, 2.5) * u, u), 0.0, 1e-15);
}

TEST(MagicFrame, Orthonormal) {
    for (const MagicFrame& f : {xy_magic_frame(), h_magic_frame(), magic_frame_for(t_gate_target(Convention::XZ))}) {
        EXPECT_NEAR(std::abs(inner(f.t0, f.t0)), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(inner(f.t1, f.t1)), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(inner(f.t0, f.t1)), 0.0, 1e-12);
    }
    const double b = t_state_beta();
    EXPECT_NEAR(std::pow(std::cos(2.0 * b), 2), 1.0 / 3.0, 1e-15);
}

TEST(TMagicError, Examples) {
    const MagicFrame frame = xy_magic_frame();
    EXPECT_NEAR(t_magic_error(target_unitary(t_gate_target()), frame), 0.0, 1e-12);
    EXPECT_NEAR(t_magic_error(Mat2::identity(), frame), (3.0 - std::sqrt(3.0)) / 6.0, 1e-15);
    EXPECT_NEAR(t_magic_error(Mat2::identity(), frame), 0.21132, 1e-5);
    const Mat2 g = rotation(t_theta * 1.05, 3.0 * pi / 4.0);
    EXPECT_NEAR(t_magic_error(g, frame), oracle::projected_population(g, frame.t1), 1e-12);
}

TEST(TMagicError, PhaseCovariance) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const Mat2 g = rotation(angle(rng), angle(rng));
        EXPECT_NEAR(t_magic_error(std::polar(1.0, angle(rng)) * g, xy_magic_frame()), t_magic_error(g, xy_magic_frame()),
                    1e-14);
    }
}

TEST(TMagicError, VanishesWithoutFrobeniusMatch) {
    const Mat2 t = target_unitary(t_gate_target());
    EXPECT_NEAR(frobenius_fidelity(t, t), 1.0, 1e-15);
    EXPECT_NEAR(t_magic_error(t, xy_magic_frame()), 0.0, 1e-14);
    // Same first column, different second-column phase.
    const Mat2 g = t * Mat2{1.0, 0.0, 0.0, std::polar(1.0, 0.7)};
    EXPECT_NEAR(t_magic_error(g, xy_magic_frame()), 0.0, 1e-14);
    EXPECT_LT(frobenius_fidelity(g, t), 0.9);
}

TEST(MagicFidelity, Examples) {
    const MagicFrame frame = xy_magic_frame();
    EXPECT_NEAR(magic_t_gate_fidelity(target_unitary(t_gate_target()), frame), 1.0, 1e-7);
    EXPECT_NEAR(magic_t_gate_fidelity(Mat2::identity(), frame), 1.0 - std::sqrt((3.0 - std::sqrt(3.0)) / 6.0), 1e-15);
    EXPECT_NEAR(magic_t_gate_fidelity(Mat2::identity(), frame), 0.54030, 1e-5);
    // A gate whose T-magic error is exactly 0.04.
    const double a = std::asin(0.2);
    const Mat2 g{frame.t0[0] * std::cos(a) + frame.t1[0] * std::sin(a), 0.0,
                 frame.t0[1] * std::cos(a) + frame.t1[1] * std::sin(a), 0.0};
    EXPECT_NEAR(t_magic_error(g, frame), 0.04, 1e-15);
    EXPECT_NEAR(magic_t_gate_fidelity(g, frame), 0.8, 1e-14);
}

TEST(Dephasing, PopulationsExamples) {
    const Populations p = dephased_populations(0.0, 0.0, 0.0);
    EXPECT_NEAR(p.p1, (3.0 - std::sqrt(3.0)) / 6.0, 1e-15);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    for (int i = 0; i < 100; ++i) {
        const Populations q = dephased_populations(angle(rng), angle(rng), angle(rng));
        EXPECT_NEAR(q.p0 + q.p1, 1.0, 1e-12);
    }
}

TEST(Dephasing, PopulationsMatchExplicitTwirl) {
    const MagicFrame frame = xy_magic_frame();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const double theta = angle(rng), delta = angle(rng), phi = angle(rng);
        const Mat2 u = rotation_with_detuning(theta, delta, phi);
        const Vec2 psi = u.column(0);
        const Mat2 d = oracle::twirl(outer(psi, psi));
        const Populations p = dephased_populations(theta, delta, phi);
        EXPECT_NEAR(p.p0, inner(frame.t0, d * frame.t0).real(), 1e-10);
        EXPECT_NEAR(p.p1, inner(frame.t1, d * frame.t1).real(), 1e-10);
        EXPECT_NEAR(std::abs(inner(frame.t0, d * frame.t1)), 0.0, 1e-10);
    }
}

TEST(Dephasing, MinimumError) {
    const DephasedOptimum best = min_dephased_error();
    EXPECT_NEAR(best.error, (3.0 - std::sqrt(6.0)) / 6.0, 1e-12);
    EXPECT_NEAR(best.error, 9.175e-2, 1e-5);
    EXPECT_NEAR(wrap_angle(best.theta), -pi / 4.0, 1e-12);
    double scan = 1.0;
    for (int k = 0; k < 1000000; ++k) scan = std::min(scan, dephased_populations(2.0 * pi * k / 1e6, 0.0, 0.0).p1);
    EXPECT_NEAR(scan, best.error, 1e-9);
    EXPECT_GE(scan, best.error - 1e-15);
}

TEST(WrapAngle, HalfOpenInterval) {
    EXPECT_DOUBLE_EQ(wrap_angle(pi), pi);
    EXPECT_DOUBLE_EQ(wrap_angle(-pi), pi);
    EXPECT_NEAR(wrap_angle(3.0 * pi / 2.0), -pi / 2.0, 1e-15);
}

TEST(ExpIPauli, MatchesSeriesAndDerivative) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    for (int i = 0; i < 30; ++i) {
        const double ax = c(rng), ay = c(rng), az = c(rng);
        const Mat2 series = oracle::expm(oracle::pauli_combination(cplx{0, ax}, cplx{0, ay}, cplx{0, az}));
        expect_near(exp_i_pauli(ax, ay, az), series, 1e-12);
        const double dx = c(rng), dy = c(rng), dz = c(rng);
        const double h = 1e-5;
        const Mat2 fd = (1.0 / (2.0 * h)) * (exp_i_pauli(ax + h * dx, ay + h * dy, az + h * dz) -
                                              exp_i_pauli(ax - h * dx, ay - h * dy, az - h * dz));
        expect_near(exp_i_pauli_derivative(ax, ay, az, dx, dy, dz), fd, 1e-8);
    }
    expect_near(exp_i_pauli_derivative(0.0, 0.0, 0.0, 1.0, 0.0, 0.0), cplx{0, 1} * pauli_x, 1e-15);
}
