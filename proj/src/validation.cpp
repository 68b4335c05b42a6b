#include "predistill/validation.hpp"

#include <cmath>
#include <stdexcept>

namespace predistill {

std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
    const double a = m.m00.real();
    const double d = m.m11.real();
    const cplx b = 0.5 * (m.m01 + std::conj(m.m10));
    const double mean = 0.5 * (a + d);
    const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    return {mean - radius, mean + radius};
}

bool is_density_matrix(const Mat2& m, double tol) {
    const bool hermitian = std::abs(m.m00.imag()) <= tol && std::abs(m.m11.imag()) <= tol &&
                           std::abs(m.m01 - std::conj(m.m10)) <= tol;
    if (!hermitian) return false;
    if (std::abs(m.trace() - 1.0) > tol) return false;
    return hermitian_eigenvalues(m)[0] >= -tol;
}

void require_density_matrix(const Mat2& m, double tol) {
    if (!is_density_matrix(m, tol)) throw std::invalid_argument("not a density matrix");
}

}  // namespace predistill
