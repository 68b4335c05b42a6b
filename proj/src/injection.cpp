#include "predistill/injection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "predistill/validation.hpp"

namespace predistill {

namespace {

constexpr double density_tolerance = 1e-12;

void require_error_rates(double eps1, double eps2) {
    for (double e : {eps1, eps2})
        if (!(e >= 0.0 && e < 0.5)) throw std::domain_error("T-state error rates must lie in [0, 1/2)");
}

}  // namespace

Vec2 InputState::ket() const { return {std::cos(theta), std::polar(std::sin(theta), phi)}; }

DensityMatrix2::DensityMatrix2(const Mat2& m) : m_(m) {
    if (!is_density_matrix(m, density_tolerance)) throw std::invalid_argument("not a density matrix");
}

DensityMatrix2 DensityMatrix2::pure(const Vec2& ket) {
    DensityMatrix2 rho(outer(ket, ket));
    rho.pure_ = true;
    return rho;
}

double DensityMatrix2::determinant() const { return pure_ ? 0.0 : std::max(0.0, m_.det().real()); }

cplx injection_coefficient(double eps1, double eps2) {
    const double r3 = std::sqrt(3.0);
    const cplx i{0.0, 1.0};
    const cplx num = 1.0 - i * r3 + i * (2.0 * i + r3) * eps2 + eps1 * (-2.0 + i * r3 + 4.0 * eps2);
    const double den = -2.0 + eps1 + eps2 - 2.0 * eps1 * eps2;
    if (std::abs(den) < 1e-300) throw std::domain_error("injection coefficient is singular");
    return num / den;
}

DensityMatrix2 injection_channel(const InputState& psi, double eps1, double eps2) {
    require_error_rates(eps1, eps2);
    const cplx a = injection_coefficient(eps1, eps2);
    const double c = std::cos(psi.theta);
    const double s = std::sin(psi.theta);
    const cplx i{0.0, 1.0};
    return DensityMatrix2(Mat2{c * c, -i * a * std::polar(c * s, -psi.phi), i * std::conj(a) * std::polar(c * s, psi.phi),
                               s * s});
}

DensityMatrix2 ideal_injection_output(const InputState& psi) {
    const Mat2 rotation{1.0, 0.0, 0.0, std::polar(1.0, -std::numbers::pi / 6.0)};
    return DensityMatrix2::pure(rotation * psi.ket());
}

double jozsa_fidelity(const DensityMatrix2& rho, const DensityMatrix2& sigma) {
    const double overlap = (rho.matrix() * sigma.matrix()).trace().real();
    return std::clamp(overlap + 2.0 * std::sqrt(rho.determinant() * sigma.determinant()), 0.0, 1.0);
}

double channel_fidelity(double theta, double eps1, double eps2) {
    require_error_rates(eps1, eps2);
    const double s2 = std::sin(2.0 * theta);
    const double sum = eps1 + eps2;
    return 1.0 - 0.75 * sum / (2.0 - sum + 2.0 * eps1 * eps2) * s2 * s2;
}

}  // namespace predistill
