#pragma once

#include <Eigen/Core>
#include <functional>

namespace predistill {

using ResidualFunction = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& residual)>;

struct LeastSquaresOptions {
    double tolerance = 1e-15;
    int max_evaluations = 20000;
};

struct LeastSquaresResult {
    Eigen::VectorXd x;
    double max_residual = 0.0;  // infinity norm at x
    int evaluations = 0;
};

// Damped Gauss-Newton (MINPACK lmdif) with a central-difference Jacobian.
LeastSquaresResult levenberg_marquardt(const ResidualFunction& f, int residual_count, Eigen::VectorXd x0,
                                       const LeastSquaresOptions& options = {});

}  // namespace predistill
