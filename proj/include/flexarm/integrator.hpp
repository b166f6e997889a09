#pragma once

#include <Eigen/Dense>

#include <functional>

namespace flexarm {

// y' = f(t, y)
using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;

struct IntegratorOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.0;      // 0 = no cap
    double initial_step = 0.0;  // 0 = automatic
    long max_steps = 4'000'000;
};

// Adaptive Dormand-Prince 5(4) with the classic quartic dense-output
// interpolant. The observer is called on a uniform grid t0 + k*sample_period
// (k = 0, 1, ...) up to t1; samples are produced from dense output, so the
// grid is independent of the accepted step sequence. Returns the final state.
//
// Throws NumericalError on step-size underflow or step budget exhaustion;
// exceptions thrown by the rhs propagate.
Eigen::VectorXd integrate_ode(const OdeRhs& rhs, Eigen::VectorXd y0, double t0, double t1,
                              const IntegratorOptions& opt, double sample_period,
                              const std::function<void(double, const Eigen::VectorXd&)>& observer);

// Convenience without sampling.
Eigen::VectorXd integrate_ode(const OdeRhs& rhs, Eigen::VectorXd y0, double t0, double t1,
                              const IntegratorOptions& opt = {});

} // namespace flexarm
