#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "predistill/su2.hpp"

namespace predistill {

// Central differences at base_step / 2^j, j = 0..halvings, combined by
// repeated Richardson elimination of the h^2, h^4, ... error terms.
struct DifferenceLadder {
    double base_step = 0.02;
    int halvings = 3;
};

template <class F>
Mat2 central_difference(F&& f, int order, double h) {
    switch (order) {
        case 1:
            return (1.0 / (2.0 * h)) * (f(h) - f(-h));
        case 2:
            return (1.0 / (h * h)) * (f(h) - 2.0 * f(0.0) + f(-h));
        case 3:
            return (1.0 / (2.0 * h * h * h)) * (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h));
        case 4:
            return (1.0 / (h * h * h * h)) * (f(2.0 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2.0 * h));
        default:
            throw std::invalid_argument("finite-difference order must be 1..4");
    }
}

template <class F>
Mat2 richardson_derivative(F&& f, int order, const DifferenceLadder& ladder = {}) {
    std::vector<Mat2> column;
    double h = ladder.base_step;
    for (int j = 0; j <= ladder.halvings; ++j, h /= 2.0) column.push_back(central_difference(f, order, h));
    for (int level = 1; level <= ladder.halvings; ++level) {
        const double gain = std::pow(4.0, level);
        for (std::size_t j = 0; j + 1 < column.size(); ++j)
            column[j] = (1.0 / (gain - 1.0)) * (gain * column[j + 1] - column[j]);
        column.pop_back();
    }
    return column.front();
}

}  // namespace predistill
