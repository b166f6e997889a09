#include "flexarm/integrator.hpp"

#include "flexarm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flexarm {

namespace {

// Dormand-Prince RK5(4)7M tableau
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = b1 - 5179.0 / 57600.0, e3 = b3 - 7571.0 / 16695.0,
                 e4 = b4 - 393.0 / 640.0, e5 = b5 + 92097.0 / 339200.0,
                 e6 = b6 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

} // namespace

Eigen::VectorXd integrate_ode(const OdeRhs& rhs, Eigen::VectorXd y, double t0, double t1,
                              const IntegratorOptions& opt, double sample_period,
                              const std::function<void(double, const Eigen::VectorXd&)>& observer) {
    const auto n = y.size();
    Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    Eigen::VectorXd r1(n), r2(n), r3(n), r4(n), r5(n); // dense-output polynomial

    double t = t0;
    rhs(t, y, k1); // FSAL seed

    long next_sample = 0;
    auto emit_due_samples = [&](double t_lo, double t_hi, bool have_dense, double h) {
        while (sample_period > 0.0 && observer) {
            const double ts = t0 + static_cast<double>(next_sample) * sample_period;
            if (ts > t_hi + 1e-12 * std::max(1.0, std::abs(t_hi)) || ts > t1 + 1e-12) break;
            if (!have_dense) {
                if (ts < t_lo - 1e-12) { ++next_sample; continue; }
                observer(ts, y);
            } else {
                const double th = std::clamp((ts - t_lo) / h, 0.0, 1.0);
                ytmp = r1 + th * (r2 + (1.0 - th) * (r3 + th * (r4 + (1.0 - th) * r5)));
                observer(ts, ytmp);
            }
            ++next_sample;
        }
    };
    emit_due_samples(t0, t0, false, 0.0); // the k = 0 sample is the initial state

    const double span = t1 - t0;
    if (span <= 0.0) return y;
    double h = opt.initial_step > 0.0 ? opt.initial_step : span / 100.0;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

    for (long step = 0; step < opt.max_steps; ++step) {
        if (t >= t1) return y;
        h = std::min(h, t1 - t);
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw NumericalError("integrator step-size underflow at t = " + std::to_string(t));

        ytmp = y + h * a21 * k1;
        rhs(t + h / 5.0, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + 3.0 * h / 10.0, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + 4.0 * h / 5.0, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + 8.0 * h / 9.0, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);

        // scaled RMS error of the embedded pair
        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ei = h * (e1 * k1(i) + e3 * k3(i) + e4 * k4(i)
                                   + e5 * k5(i) + e6 * k6(i) + e7 * k7(i));
            const double sc = opt.abs_tol
                            + opt.rel_tol * std::max(std::abs(y(i)), std::abs(ynew(i)));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            r1 = y;
            r2 = ynew - y;
            r3 = h * k1 - r2;
            r4 = r2 - h * k7 - r3;
            r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            emit_due_samples(t, t + h, true, h);
            t += h;
            y.swap(ynew);
            k1.swap(k7); // FSAL
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    }
    throw NumericalError("integrator exceeded the step budget");
}

Eigen::VectorXd integrate_ode(const OdeRhs& rhs, Eigen::VectorXd y0, double t0, double t1,
                              const IntegratorOptions& opt) {
    return integrate_ode(rhs, std::move(y0), t0, t1, opt, 0.0, nullptr);
}

} // namespace flexarm
