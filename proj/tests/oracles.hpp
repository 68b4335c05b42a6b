#pragma once

// Independent reference computations shared by the unit tests. Nothing here
// calls into the closed forms under test.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "predistill/su2.hpp"

namespace oracle {

using predistill::cplx;
using predistill::Mat2;
using predistill::Vec2;

// exp(A) by scaling and squaring around a 64-term Taylor series.
inline Mat2 expm(Mat2 a) {
    int squarings = 0;
    while (predistill::max_abs(a) > 0.5) {
        a *= 0.5;
        ++squarings;
    }
    Mat2 sum = Mat2::identity();
    Mat2 term = Mat2::identity();
    for (int k = 1; k <= 64; ++k) {
        term = (1.0 / k) * (term * a);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

inline Mat2 pauli_combination(cplx cx, cplx cy, cplx cz) {
    return cx * predistill::pauli_x + cy * predistill::pauli_y + cz * predistill::pauli_z;
}

// exp(-i theta/2 (cos phi X + sin phi Y)) from the series.
inline Mat2 rotation(double theta, double phi) {
    const cplx k{0.0, -theta / 2.0};
    return expm(pauli_combination(k * std::cos(phi), k * std::sin(phi), 0.0));
}

inline Mat2 product(const std::vector<Mat2>& factors) {
    Mat2 acc = Mat2::identity();
    for (const Mat2& f : factors) acc = acc * f;
    return acc;
}

// <t1| rho |t1> with rho = G|0><0|G^dagger built explicitly.
inline double projected_population(const Mat2& g, const Vec2& t1) {
    const Vec2 psi{g.m00, g.m10};
    cplx acc = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc += std::conj(t1[i]) * psi[i] * std::conj(psi[j]) * t1[j];
    return acc.real();
}

// T = e^{i pi/4} S H
inline Mat2 clifford_t() {
    const double r = 1.0 / std::sqrt(2.0);
    const Mat2 s{1.0, 0.0, 0.0, cplx{0.0, 1.0}};
    const Mat2 h{r, r, r, -r};
    return std::polar(1.0, std::numbers::pi / 4.0) * (s * h);
}

inline Mat2 twirl(const Mat2& rho) {
    const Mat2 t = clifford_t();
    const Mat2 td = t.adjoint();
    return (1.0 / 3.0) * (rho + t * rho * td + td * rho * t);
}

inline double norm_of_difference(const Mat2& a, const Mat2& b) { return predistill::max_abs(a - b); }

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    return g;
}

}  // namespace oracle
