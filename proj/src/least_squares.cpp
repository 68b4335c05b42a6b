#include "predistill/least_squares.hpp"

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace predistill {

namespace {

struct Adapter {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const ResidualFunction* f;
    int n_inputs;
    int n_values;
    int* counter;

    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
        out.resize(n_values);
        (*f)(x, out);
        ++*counter;
        return 0;
    }
    int inputs() const { return n_inputs; }
    int values() const { return n_values; }
};

}  // namespace

LeastSquaresResult levenberg_marquardt(const ResidualFunction& f, int residual_count, Eigen::VectorXd x0,
                                       const LeastSquaresOptions& options) {
    int evaluations = 0;
    Adapter adapter{&f, static_cast<int>(x0.size()), residual_count, &evaluations};
    Eigen::NumericalDiff<Adapter, Eigen::Central> diff(adapter);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Adapter, Eigen::Central>> lm(diff);
    lm.parameters.ftol = options.tolerance;
    lm.parameters.xtol = options.tolerance;
    lm.parameters.gtol = 0.0;
    lm.parameters.maxfev = options.max_evaluations;
    lm.minimize(x0);

    Eigen::VectorXd r(residual_count);
    f(x0, r);
    return {x0, r.lpNorm<Eigen::Infinity>(), evaluations};
}

}  // namespace predistill
