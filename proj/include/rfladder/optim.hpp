#pragma once

#include <functional>

#include <Eigen/Core>

namespace rfladder {

/// Nelder-Mead options. Convergence: function spread below f_tol_rel
/// (relative) or simplex extent below x_tol on every coordinate.
struct NelderMeadOptions {
    int max_iterations{2000};
    double f_tol_rel{1e-15};
    Eigen::VectorXd x_tol;          // per-dimension; empty disables the test
    Eigen::VectorXd initial_step;   // per-dimension simplex edge lengths
    Eigen::VectorXd lower_bounds;   // empty = unbounded
    Eigen::VectorXd upper_bounds;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f{0.0};
    int iterations{0};
    bool converged{false};  // tolerance met before the iteration cap
};

/// Derivative-free simplex minimization (reflection/expansion/contraction/
/// shrink with standard coefficients). Deterministic: ties in the vertex
/// ordering are broken by insertion order. Bounds, when given, are enforced
/// by projecting candidate points into the box.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options);

}  // namespace rfladder
