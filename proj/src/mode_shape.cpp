#include "flexarm/mode_shape.hpp"

#include "flexarm/errors.hpp"

#include <cmath>

namespace flexarm {

namespace {

double freq_eq(double b, double alpha) {
    return 1.0 + std::cos(b) * std::cosh(b)
         + alpha * b * (std::cos(b) * std::sinh(b) - std::cosh(b) * std::sin(b));
}

// magnitude of the largest term, used to scale the residual
double freq_eq_scale(double b, double alpha) {
    return 1.0 + std::cosh(b) * (1.0 + alpha * b) + alpha * b * std::sinh(b);
}

} // namespace

double frequency_equation_residual(double beta_l, double alpha) {
    return std::abs(freq_eq(beta_l, alpha)) / freq_eq_scale(beta_l, alpha);
}

double solve_frequency_equation(double alpha) {
    if (alpha < 0.0) throw ValidationError("mass ratio must be >= 0");

    // scan (0, 4] for the first sign change
    const int n_scan = 4096;
    double a = 1e-9, fa = freq_eq(a, alpha);
    double b = 0.0, fb = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= n_scan; ++i) {
        b = 4.0 * static_cast<double>(i) / n_scan;
        fb = freq_eq(b, alpha);
        if (fa * fb <= 0.0) { bracketed = true; break; }
        a = b;
        fa = fb;
    }
    if (!bracketed)
        throw NumericalError("frequency equation: no sign change in (0, 4]");

    for (int it = 0; it < 200 && b - a > 1e-16 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = freq_eq(m, alpha);
        if (fa * fm <= 0.0) { b = m; fb = fm; }
        else { a = m; fa = fm; }
    }
    const double root = 0.5 * (a + b);
    if (frequency_equation_residual(root, alpha) > 1e-12)
        throw NumericalError("frequency equation root did not converge");
    return root;
}

ModeShape::ModeShape(double beta_l, const BeamConfig& beam) {
    if (!(beta_l > 0.0)) throw ValidationError("beta_1 l must be > 0");
    beta_l_ = beta_l;
    sigma_ = (std::cos(beta_l) + std::cosh(beta_l))
           / (std::sin(beta_l) + std::sinh(beta_l));
    alpha_ = beam.mass_ratio();
    const double beta = beta_l / beam.length;
    omega1_ = std::sqrt(beam.flexural_rigidity / beam.linear_density) * beta * beta;
}

double ModeShape::phi(double xi) const {
    const double z = beta_l_ * xi;
    return std::cos(z) - std::cosh(z) - sigma_ * (std::sin(z) - std::sinh(z));
}

double ModeShape::dphi(double xi) const {
    const double z = beta_l_ * xi;
    return beta_l_ * (-std::sin(z) - std::sinh(z) - sigma_ * (std::cos(z) - std::cosh(z)));
}

double ModeShape::ddphi(double xi) const {
    const double z = beta_l_ * xi;
    return beta_l_ * beta_l_
         * (-std::cos(z) - std::cosh(z) + sigma_ * (std::sin(z) + std::sinh(z)));
}

double ModeShape::dddphi(double xi) const {
    const double z = beta_l_ * xi;
    return beta_l_ * beta_l_ * beta_l_
         * (std::sin(z) - std::sinh(z) + sigma_ * (std::cos(z) + std::cosh(z)));
}

double ModeShape::c1(double xi) const {
    // closed form of (1/2) int_0^xi dphi^2; generated from the Eq.-form of
    // dphi and checked against quadrature
    const double B = beta_l_, s = sigma_, z = B * xi;
    const double s2 = s * s;
    return -0.25 * B
        * (-2.0 * B * s2 * xi
           + 2.0 * s2 * std::sin(z) * std::cosh(z)
           - 0.5 * s2 * std::sin(2.0 * z)
           + 2.0 * s2 * std::cos(z) * std::sinh(z)
           - 0.5 * s2 * std::sinh(2.0 * z)
           - 4.0 * s * std::cos(z) * std::cosh(z)
           + s * std::cos(2.0 * z)
           + s * std::cosh(2.0 * z)
           + 2.0 * s
           - 2.0 * std::sin(z) * std::cosh(z)
           + 0.5 * std::sin(2.0 * z)
           + 2.0 * std::cos(z) * std::sinh(z)
           - 0.5 * std::sinh(2.0 * z));
}

ModeShape make_mode_shape(const BeamConfig& beam) {
    return ModeShape(solve_frequency_equation(beam.mass_ratio()), beam);
}

} // namespace flexarm
