#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "predistill/injection.hpp"

using namespace predistill;
using std::numbers::pi;

namespace {

using CMat = Eigen::Matrix2cd;

CMat to_eigen(const Mat2& m) {
    CMat e;
    e << m.m00, m.m01, m.m10, m.m11;
    return e;
}

CMat sqrt_psd(const CMat& m) {
    const Eigen::SelfAdjointEigenSolver<CMat> es(m);
    const Eigen::Vector2d roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 by eigendecomposition.
double uhlmann_fidelity(const Mat2& rho, const Mat2& sigma) {
    const CMat r = sqrt_psd(to_eigen(rho));
    const CMat inner = r * to_eigen(sigma) * r;
    const double t = sqrt_psd(0.5 * (inner + inner.adjoint())).trace().real();
    return t * t;
}

std::complex<long double> coefficient_oracle(long double e1, long double e2) {
    using C = std::complex<long double>;
    const long double r3 = std::sqrt(3.0L);
    const C i{0.0L, 1.0L};
    const C num = C{1.0L} - i * r3 + i * (C{2.0L} * i + r3) * e2 + e1 * (C{-2.0L} + i * r3 + C{4.0L} * e2);
    return num / C{-2.0L + e1 + e2 - 2.0L * e1 * e2};
}

}  // namespace

TEST(InjectionChannel, ZeroErrorIsIdeal) {
    EXPECT_NEAR(std::abs(injection_coefficient(0.0, 0.0)), 1.0, 1e-15);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> a(-pi, pi);
    for (int i = 0; i < 50; ++i) {
        const InputState psi{a(rng), a(rng)};
        const Mat2 out = injection_channel(psi, 0.0, 0.0).matrix();
        EXPECT_LE(max_abs(out - ideal_injection_output(psi).matrix()), 1e-14);
        EXPECT_NEAR(jozsa_fidelity(injection_channel(psi, 0.0, 0.0), ideal_injection_output(psi)), 1.0, 1e-12);
    }
}

TEST(InjectionChannel, GroundStateUnaffected) {
    const Mat2 ground{1.0, 0.0, 0.0, 0.0};
    for (double e : {0.0, 0.1, 0.3, 0.49}) EXPECT_LE(max_abs(injection_channel({0.0, 1.1}, e, 0.2).matrix() - ground), 1e-15);
}

TEST(InjectionChannel, MatchesDirectFormula) {
    const auto a = coefficient_oracle(0.01L, 0.01L);
    const cplx ad{static_cast<double>(a.real()), static_cast<double>(a.imag())};
    EXPECT_LE(std::abs(injection_coefficient(0.01, 0.01) - ad), 1e-14);
    const Mat2 out = injection_channel({pi / 4.0, 0.0}, 0.01, 0.01).matrix();
    EXPECT_NEAR(out.m00.real(), 0.5, 1e-14);
    EXPECT_NEAR(out.m11.real(), 0.5, 1e-14);
    EXPECT_NEAR(std::abs(out.m01), std::abs(ad) / 2.0, 1e-14);
    EXPECT_NEAR(std::abs(out.m01 - std::conj(out.m10)), 0.0, 1e-15);
}

TEST(InjectionChannel, OutputsAreDensityMatrices) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> a(-pi, pi);
    std::uniform_real_distribution<double> e(0.0, 0.4999);
    for (int i = 0; i < 200; ++i) {
        const Mat2 m = injection_channel({a(rng), a(rng)}, e(rng), e(rng)).matrix();
        EXPECT_GE(m.det().real(), -1e-12);
        EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
    }
}

TEST(InjectionChannel, RejectsInvalidErrorRates) {
    EXPECT_THROW(injection_channel({0.3, 0.0}, -0.01, 0.0), std::domain_error);
    EXPECT_THROW(injection_channel({0.3, 0.0}, 0.0, 0.5), std::domain_error);
    EXPECT_THROW(channel_fidelity(0.3, 0.6, 0.0), std::domain_error);
    EXPECT_THROW(DensityMatrix2(Mat2{1.0, 0.0, 0.0, 1.0}), std::invalid_argument);
}

TEST(Jozsa, Examples) {
    const auto zero = DensityMatrix2::pure({1.0, 0.0});
    const auto one = DensityMatrix2::pure({0.0, 1.0});
    const auto plus = DensityMatrix2::pure({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    const DensityMatrix2 mixed(Mat2{0.5, 0.0, 0.0, 0.5});
    EXPECT_NEAR(jozsa_fidelity(plus, plus), 1.0, 1e-15);
    EXPECT_NEAR(jozsa_fidelity(zero, one), 0.0, 1e-15);
    EXPECT_NEAR(jozsa_fidelity(mixed, plus), 0.5, 1e-15);
    EXPECT_NEAR(jozsa_fidelity(plus, mixed), 0.5, 1e-15);
}

TEST(Jozsa, MatchesEigendecompositionOracle) {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> n;
    auto random_state = [&] {
        Mat2 g{cplx{n(rng), n(rng)}, cplx{n(rng), n(rng)}, cplx{n(rng), n(rng)}, cplx{n(rng), n(rng)}};
        Mat2 rho = g * g.adjoint();
        return (1.0 / rho.trace().real()) * rho;
    };
    for (int i = 0; i < 200; ++i) {
        const Mat2 r = random_state();
        const Mat2 s = random_state();
        EXPECT_NEAR(jozsa_fidelity(DensityMatrix2(r), DensityMatrix2(s)), uhlmann_fidelity(r, s), 1e-10);
    }
}

TEST(ChannelFidelity, Examples) {
    EXPECT_EQ(channel_fidelity(0.7, 0.0, 0.0), 1.0);
    for (double e : {0.01, 0.2, 0.4}) {
        EXPECT_NEAR(channel_fidelity(0.0, e, 0.1), 1.0, 1e-15);
        EXPECT_NEAR(channel_fidelity(pi / 2.0, e, 0.1), 1.0, 1e-15);
    }
    EXPECT_NEAR(channel_fidelity(pi / 4.0, 0.01, 0.01), 1.0 - 0.75 * 0.02 / 1.9802, 1e-15);
    EXPECT_NEAR(channel_fidelity(pi / 4.0, 0.01, 0.01), 0.9924250, 5e-8);
}

TEST(ChannelFidelity, ClosedFormMatchesMatrixRoute) {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> a(-pi, pi);
    std::uniform_real_distribution<double> e(0.0, 0.1);
    for (int i = 0; i < 1000; ++i) {
        const InputState psi{a(rng), a(rng)};
        const double e1 = e(rng), e2 = e(rng);
        const double route = jozsa_fidelity(injection_channel(psi, e1, e2), ideal_injection_output(psi));
        EXPECT_NEAR(channel_fidelity(psi.theta, e1, e2), route, 1e-10);
        // Against a pure reference the fidelity is the expectation value.
        const Mat2 rho = injection_channel(psi, e1, e2).matrix();
        const Vec2 ket = Mat2{1.0, 0.0, 0.0, std::polar(1.0, -pi / 6.0)} * psi.ket();
        EXPECT_NEAR(inner(ket, rho * ket).real(), route, 1e-12);
    }
}

TEST(ChannelFidelity, SymmetricInErrorRates) {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> a(-pi, pi);
    std::uniform_real_distribution<double> e(0.0, 0.49);
    for (int i = 0; i < 200; ++i) {
        const double t = a(rng), e1 = e(rng), e2 = e(rng);
        EXPECT_EQ(channel_fidelity(t, e1, e2), channel_fidelity(t, e2, e1));
    }
}

TEST(ChannelFidelity, IndependentOfInputPhase) {
    for (double theta : {0.3, pi / 4.0, 1.2}) {
        const double ref = jozsa_fidelity(injection_channel({theta, 0.0}, 0.03, 0.07), ideal_injection_output({theta, 0.0}));
        for (double phi : {-2.0, 0.5, 1.7, 3.0})
            EXPECT_NEAR(jozsa_fidelity(injection_channel({theta, phi}, 0.03, 0.07), ideal_injection_output({theta, phi})),
                        ref, 1e-12);
    }
}

TEST(ChannelFidelity, InfidelityLinearInError) {
    for (double theta : {0.2, pi / 4.0, 0.6, 1.1}) {
        const double expected = 3.0 / 8.0 * std::pow(std::sin(2.0 * theta), 2);
        const auto grid = oracle::log_grid(1e-4, 1e-2, 9);
        std::vector<double> infidelity;
        for (double e : grid) {
            const InputState psi{theta, 0.4};
            infidelity.push_back(1.0 - jozsa_fidelity(injection_channel(psi, e / 2.0, e / 2.0), ideal_injection_output(psi)));
        }
        EXPECT_NEAR(oracle::loglog_slope(grid, infidelity), 1.0, 0.01) << theta;
        EXPECT_NEAR(infidelity.front() / grid.front(), expected, 0.01 * expected) << theta;
    }
}
