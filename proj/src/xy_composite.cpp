#include "predistill/xy_composite.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "predistill/errors.hpp"
#include "predistill/finite_difference.hpp"
#include "predistill/least_squares.hpp"

namespace predistill {

using std::numbers::pi;

namespace {

constexpr double exactness = 1e-8;

// Simple roots of f on (lo, hi], located by a uniform sign scan and
// refined by TOMS 748.
template <class F>
std::vector<double> scan_roots(F f, double lo, double hi, int samples) {
    std::vector<double> roots;
    const double step = (hi - lo) / samples;
    double a = lo + step;
    double fa = f(a);
    for (int i = 2; i <= samples; ++i) {
        const double b = lo + i * step;
        const double fb = f(b);
        if (std::isfinite(fa) && std::isfinite(fb) && (fa < 0.0) != (fb < 0.0)) {
            if (fb == 0.0) {
                roots.push_back(b);
            } else {
                std::uintmax_t iterations = 200;
                const auto bracket = boost::math::tools::toms748_solve(
                    f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(), iterations);
                roots.push_back(0.5 * (bracket.first + bracket.second));
            }
        }
        a = b;
        fa = fb;
    }
    return roots;
}

bool is_exact(const SymmetricSequence& seq, int cancelled_orders) {
    const auto c = error_taylor_coefficients(seq, cancelled_orders);
    if (frobenius_fidelity(c[0], target_unitary(seq.target)) < 1.0 - exactness) return false;
    for (int k = 1; k <= cancelled_orders; ++k)
        if (max_abs(c[static_cast<std::size_t>(k)]) > exactness) return false;
    return true;
}

void require_xy(const GateTarget& target) {
    if (target.convention != Convention::XY) throw std::invalid_argument("symmetric sequences need an X-Y target");
}

}  // namespace

std::vector<Pulse> pulse_train(const SymmetricSequence& seq) {
    const int n = seq.half_length();
    if (n < 1) throw std::invalid_argument("sequence has no phases");
    std::vector<Pulse> train;
    train.reserve(static_cast<std::size_t>(2 * n - 1));
    auto area = [&](int i) { return i == 0 ? seq.theta : pi; };
    for (int i = 0; i < n; ++i) train.push_back({area(i), seq.phases[static_cast<std::size_t>(i)]});
    for (int i = n - 2; i >= 0; --i) train.push_back({area(i), seq.phases[static_cast<std::size_t>(i)]});
    return train;
}

Unitary2 apply_with_error(const SymmetricSequence& seq, double eps) {
    Unitary2 u = Mat2::identity();
    for (const Pulse& p : pulse_train(seq)) u = u * rotation(p.area * (1.0 + eps), p.phase);
    return u;
}

std::vector<Mat2> error_taylor_coefficients(const SymmetricSequence& seq, int order) {
    const auto k_max = static_cast<std::size_t>(order);
    std::vector<Mat2> acc(k_max + 1, Mat2::zero());
    acc[0] = Mat2::identity();
    for (const Pulse& p : pulse_train(seq)) {
        // R(a(1+eps)) = R(a) exp(eps A) with A = -i a/2 (cos phi X + sin phi Y).
        const Mat2 generator =
            cplx{0.0, -p.area / 2.0} * (std::cos(p.phase) * pauli_x + cplx{std::sin(p.phase)} * pauli_y);
        std::vector<Mat2> factor(k_max + 1);
        factor[0] = rotation(p.area, p.phase);
        for (std::size_t k = 1; k <= k_max; ++k)
            factor[k] = (1.0 / static_cast<double>(k)) * (factor[k - 1] * generator);
        std::vector<Mat2> next(k_max + 1, Mat2::zero());
        for (std::size_t k = 0; k <= k_max; ++k)
            for (std::size_t j = 0; j <= k; ++j) next[k] += acc[j] * factor[k - j];
        acc = std::move(next);
    }
    return acc;
}

SymmetricSequence single_pulse(const GateTarget& target) { return {target.theta_star, {target.phi_star}, target}; }

std::vector<SymmetricSequence> solve_three_pulse(const GateTarget& target) {
    require_xy(target);
    const double level = (2.0 / pi) * std::cos(target.theta_star / 2.0);
    const auto roots = scan_roots([&](double t) { return std::sin(t) / t - level; }, 0.0, 2.0 * pi, 4096);

    std::vector<SymmetricSequence> out;
    const cplx rhs = std::polar(std::sin(target.theta_star / 2.0), target.phi_star);
    for (double theta : roots) {
        const double ratio = -pi / (2.0 * theta);
        if (std::abs(ratio) > 1.0) continue;
        const double spread = std::acos(ratio);
        for (double x : {spread, -spread}) {
            const double phi1 = std::arg(rhs / cplx{std::cos(theta) * std::cos(x), std::sin(x)});
            SymmetricSequence seq{theta, {phi1, phi1 + x}, target};
            if (is_exact(seq, 1)) out.push_back(std::move(seq));
        }
    }
    if (out.empty()) throw NumericalFailure("no three-pulse solution in branch");
    return out;
}

double five_pulse_alpha_condition(double alpha, double theta_star) {
    const double c = std::cos(alpha - std::atan(std::sin(alpha) / (4.0 + 5.0 * std::cos(alpha))));
    return std::cos(theta_star / 2.0) + c * std::sin((pi / 2.0) * (1.0 + 2.0 * std::cos(alpha)) / c);
}

double five_pulse_implied_theta_star(const FivePulseAngles& a) {
    return 2.0 * std::acos(std::cos(a.alpha + a.beta) * std::sin(a.theta));
}

std::array<double, 6> five_pulse_residuals(const FivePulseAngles& a, const GateTarget& target) {
    const double s = a.alpha + a.beta;
    const double t = a.theta;
    const double phi1 = a.phi2 + a.beta;
    // Sign of the sin term as required by the pulse product itself.
    const cplx lhs = -std::polar(1.0, phi1) * cplx{std::cos(t) * std::cos(s), -std::sin(s)};
    const cplx rhs = std::polar(std::sin(target.theta_star / 2.0), target.phi_star);
    return {
        std::cos(s) * std::sin(t) - std::cos(target.theta_star / 2.0),
        (lhs - rhs).real(),
        (lhs - rhs).imag(),
        pi + 2.0 * pi * std::cos(a.alpha) + 2.0 * t * std::cos(s),
        4.0 * pi * t + 4.0 * pi * pi * std::cos(a.beta) + 2.0 * pi * pi * std::cos(a.beta - a.alpha) +
            8.0 * pi * t * std::cos(a.alpha) + (3.0 * pi * pi + 4.0 * t * t) * std::cos(s),
        4.0 * std::sin(a.beta) + 2.0 * std::sin(a.beta - a.alpha) + 3.0 * std::sin(s),
    };
}

SymmetricSequence five_pulse_sequence(const FivePulseAngles& a, const GateTarget& target) {
    return {a.theta, {a.phi2 + a.beta, a.phi2, a.phi2 + a.alpha}, target};
}

std::vector<SymmetricSequence> solve_five_pulse(const GateTarget& target) {
    require_xy(target);
    auto condition = [&](double alpha) { return five_pulse_alpha_condition(alpha, target.theta_star); };
    std::vector<std::pair<double, SymmetricSequence>> found;
    for (double alpha : scan_roots(condition, -pi, pi, 200000)) {
        if (std::abs(condition(alpha)) > 1e-9) continue;  // sign flip across a pole
        const double beta = pi - std::atan(std::sin(alpha) / (4.0 + 5.0 * std::cos(alpha)));
        const double theta = -(pi / 2.0) * (1.0 + 2.0 * std::cos(alpha)) / std::cos(alpha + beta);
        if (!(theta > 0.0 && theta <= 3.0 * pi)) continue;
        const double phi2 = target.phi_star - beta + std::atan(std::tan(alpha + beta) / std::cos(theta));
        SymmetricSequence seq = five_pulse_sequence({alpha, beta, theta, phi2}, target);
        if (is_exact(seq, 2)) found.emplace_back(alpha, std::move(seq));
    }
    if (found.empty()) throw NumericalFailure("no five-pulse solution");
    std::stable_sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
        if ((l.first > 0.0) != (r.first > 0.0)) return l.first > 0.0;
        return l.second.theta < r.second.theta;
    });
    std::vector<SymmetricSequence> out;
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

SymmetricSequence solve_seven_pulse(const GateTarget& target, const std::optional<SymmetricSequence>& seed,
                                    std::uint64_t rng_seed) {
    require_xy(target);
    const Unitary2 goal = target_unitary(target);
    constexpr int orders = 3;
    auto unpack = [&](const Eigen::VectorXd& x) {
        return SymmetricSequence{x[0], {x[1], x[2], x[3], x[4]}, target};
    };
    const ResidualFunction residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
        auto c = error_taylor_coefficients(unpack(x), orders);
        c[0] -= goal;
        Eigen::Index i = 0;
        for (const Mat2& m : c)
            for (const cplx& e : m.entries()) {
                r[i++] = e.real();
                r[i++] = e.imag();
            }
    };
    constexpr int residual_count = 8 * (orders + 1);

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> area(0.5, 2.0 * pi);
    std::uniform_real_distribution<double> phase(-pi, pi);
    constexpr int restarts = 200;
    double best = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < restarts; ++attempt) {
        Eigen::VectorXd x0(5);
        if (attempt == 0 && seed) {
            if (seed->half_length() != 4) throw std::invalid_argument("seven-pulse seed needs four phases");
            x0 << seed->theta, seed->phases[0], seed->phases[1], seed->phases[2], seed->phases[3];
        } else {
            x0 << area(rng), phase(rng), phase(rng), phase(rng), phase(rng);
        }
        const auto fit = levenberg_marquardt(residual, residual_count, x0);
        best = std::min(best, fit.max_residual);
        if (fit.max_residual > 1e-10) continue;
        SymmetricSequence seq = unpack(fit.x);
        for (double& p : seq.phases) p = wrap_angle(p);
        if (frobenius_fidelity(apply_with_error(seq, 0.0), goal) >= 1.0 - exactness &&
            derivative_report(seq, orders + 1).verified_order >= orders)
            return seq;
    }
    throw NumericalFailure(fmt::format("seven-pulse optimizer stagnated, best residual {:.3e}", best));
}

RobustnessReport derivative_report(const SymmetricSequence& seq, int max_order) {
    if (max_order < 1 || max_order > 4) throw std::invalid_argument("derivative order must be 1..4");
    RobustnessReport report;
    bool cancelled = true;
    for (int k = 1; k <= max_order; ++k) {
        const Mat2 d = richardson_derivative([&](double e) { return apply_with_error(seq, e); }, k);
        const double norm = max_abs(d);
        report.orders.emplace_back(k, norm);
        cancelled = cancelled && norm <= certification_tolerance;
        if (cancelled) report.verified_order = k;
    }
    return report;
}

std::vector<TableRow> table_rows(TableKind kind) {
    std::vector<TableRow> rows;
    for (int k = 1; k <= 10; ++k) {
        const GateTarget target{k * pi / 10.0, 0.0, Convention::XY};
        const SymmetricSequence seq =
            kind == TableKind::ThreePulse ? solve_three_pulse(target).front() : solve_five_pulse(target).front();
        TableRow row{k / 10.0, seq.theta / pi, {}};
        for (double p : seq.phases) {
            double offset = wrap_angle(p - target.phi_star) / pi;
            if (offset <= -1.0) offset += 2.0;
            row.phase_offsets_pi.push_back(offset);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace predistill
