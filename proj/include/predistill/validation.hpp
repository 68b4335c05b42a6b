#pragma once

#include <array>

#include "predistill/su2.hpp"

namespace predistill {

// Eigenvalues of the Hermitian part, ascending.
std::array<double, 2> hermitian_eigenvalues(const Mat2& m);

bool is_density_matrix(const Mat2& m, double tol);
void require_density_matrix(const Mat2& m, double tol);

}  // namespace predistill
