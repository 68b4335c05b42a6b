#include "predistill/distill.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "predistill/validation.hpp"

namespace predistill {

namespace {

void require_unit_interval(double eps, double hi) {
    if (!(eps >= 0.0 && eps <= hi)) throw std::domain_error("error rate outside the code's domain");
}

// Bisection on a monotone bracket until the interval stops shrinking.
template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 2000; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

double five_qubit_output_error(double eps) {
    require_unit_interval(eps, 1.0);
    const double q = 1.0 - eps;
    const double num = ipow(eps, 5) + 5.0 * eps * eps * ipow(q, 3);
    if (num == 0.0) return 0.0;
    return num / (num + 5.0 * ipow(eps, 3) * q * q + ipow(q, 5));
}

double five_qubit_success_prob(double eps) {
    require_unit_interval(eps, 1.0);
    const double q = 1.0 - eps;
    return (ipow(eps, 5) + 5.0 * eps * eps * ipow(q, 3) + 5.0 * ipow(eps, 3) * q * q + ipow(q, 5)) / 6.0;
}

double fifteen_to_one_output_error(double eps) {
    require_unit_interval(eps, 0.5);
    // Numerator 1 - 15u^7 + 15u^8 - u^15 with u = 1 - v, expanded in v with
    // exact integer coefficients; the direct form cancels badly for small eps.
    static constexpr auto coeffs = [] {
        std::array<double, 16> c{};
        auto binom = [](int n, int k) {
            long long r = 1;
            for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
            return r;
        };
        for (int k = 0; k <= 15; ++k) {
            const long long sign = (k % 2 == 0) ? 1 : -1;
            long long v = -binom(15, k) * sign;
            if (k <= 7) v -= 15 * binom(7, k) * sign;
            if (k <= 8) v += 15 * binom(8, k) * sign;
            if (k == 0) v += 1;
            c[static_cast<std::size_t>(k)] = static_cast<double>(v);
        }
        return c;
    }();
    const double v = 2.0 * eps;
    const double u = 1.0 - v;
    double num = 0.0;
    if (v < 0.2) {
        for (std::size_t k = coeffs.size(); k-- > 0;) num = num * v + coeffs[k];
    } else {
        // The alternating expansion loses digits for large v; the direct form is exact enough here.
        num = 1.0 - 15.0 * ipow(u, 7) + 15.0 * ipow(u, 8) - ipow(u, 15);
    }
    return num / (2.0 * (1.0 + 15.0 * ipow(u, 8)));
}

double fifteen_to_one_threshold() {
    static const double threshold = [] {
        auto gap = [](double e) { return fifteen_to_one_output_error(e) - e; };
        // Walk up from small errors to the first sign change of e' - e.
        double lo = 1e-6;
        for (double hi = 2e-3; hi <= 0.5; hi += 1e-3) {
            if (gap(hi) > 0.0) return bisect(gap, lo, hi);
            lo = hi;
        }
        throw std::logic_error("15-to-1 map has no fixed point below 1/2");
    }();
    return threshold;
}

DistillationCode five_qubit_code() {
    return {CodeKind::FiveQubitT, 0.5 * (1.0 - std::sqrt(3.0 / 7.0)), 5};
}

DistillationCode fifteen_to_one_code() { return {CodeKind::FifteenToOneH, fifteen_to_one_threshold(), 15}; }

double output_error(const DistillationCode& code, double eps) {
    return code.kind == CodeKind::FiveQubitT ? five_qubit_output_error(eps) : fifteen_to_one_output_error(eps);
}

IterationPlan iterations_to_threshold(double eps, double target, const DistillationCode& code) {
    if (!(target > 0.0 && target < 1.0)) throw std::domain_error("target error must lie in (0, 1)");
    IterationPlan plan;
    plan.input_error = eps;
    plan.target_error = target;
    plan.trajectory.push_back(eps);
    if (eps <= target) {
        plan.levels = 0;
        return plan;
    }
    if (eps >= code.threshold_error) return plan;

    constexpr int max_rounds = 10000;
    double e = eps;
    int n = 0;
    std::uint64_t qubits = 1;
    while (e > target) {
        if (++n > max_rounds) throw std::runtime_error("distillation did not reach the target");
        e = output_error(code, e);
        qubits *= static_cast<std::uint64_t>(code.arity);
        plan.trajectory.push_back(e);
    }
    plan.levels = n;
    plan.qubits_per_logical = qubits;
    return plan;
}

std::vector<double> transition_thresholds(const DistillationCode& code, double target, int count) {
    if (count < 1) throw std::invalid_argument("count must be positive");
    std::vector<double> out{target};
    while (static_cast<int>(out.size()) < count) {
        const double level = out.back();
        out.push_back(bisect([&](double e) { return output_error(code, e) - level; }, 0.0, code.threshold_error));
    }
    return out;
}

Mat2 dephase(const Mat2& rho) {
    require_density_matrix(rho, 1e-10);
    const double r = 1.0 / std::sqrt(2.0);
    const Mat2 hadamard{r, r, r, -r};
    const Mat2 phase_s{1.0, 0.0, 0.0, cplx{0.0, 1.0}};
    const Mat2 t = std::polar(1.0, std::numbers::pi / 4.0) * (phase_s * hadamard);
    const Mat2 sum = rho + t * rho * t.adjoint() + t.adjoint() * rho * t;
    return (1.0 / 3.0) * sum;
}

}  // namespace predistill
