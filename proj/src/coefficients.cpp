#include "flexarm/coefficients.hpp"

#include "flexarm/quadrature.hpp"

#include <cmath>

namespace flexarm {

ModelCoefficients compute_coefficients(const BeamConfig& beam, const ModeShape& shape,
                                       double rel_tol) {
    beam.validate();
    ModelCoefficients c;
    const double l = beam.length;
    const double rho_l = beam.linear_density * l;
    c.lam1 = beam.slider_mass / rho_l;
    c.lam2 = beam.tip_mass / rho_l;
    c.lam3 = beam.hub_inertia / (rho_l * l * l);
    c.lam4 = beam.linear_density * beam.gravity * l * l * l / beam.flexural_rigidity;
    c.lam5 = beam.slenderness;
    c.lam6 = beam.hub_radius / l;
    c.q_limit = beam.tip_deflection_limit;
    c.model_kind = beam.model_kind;

    // All tilde constants reduce to plain integrals over xi = s/l in [0,1]
    // of the normalized shape; the A.15 length scalings cancel exactly.
    auto I = [&](auto&& f) { return integrate(f, 0.0, 1.0, rel_tol); };
    const auto& m = shape;
    c.c2 = I([&](double x) { const double d = m.ddphi(x); return d * d; });
    c.c3 = I([&](double x) { const double d2 = m.ddphi(x), d1 = m.dphi(x); return d2 * d2 * d1 * d1; });
    c.c4 = I([&](double x) { return m.c1(x); });
    c.c5 = I([&](double x) { return m.phi(x); });
    c.c6 = I([&](double x) { const double v = m.c1(x); return v * v; });
    c.c7 = I([&](double x) { return 2.0 * x * m.c1(x); });
    c.c8 = I([&](double x) { const double p = m.phi(x); return p * p; });
    c.c9 = I([&](double x) { return 2.0 * x * m.phi(x); });
    c.c10 = I([&](double x) { return 2.0 * m.c1(x) * m.phi(x); });
    // c1'(s) = phi'(s)^2 / 2, so the c11 kernel is phi'^4 / 4
    c.c11 = I([&](double x) { const double d = m.dphi(x); return 0.25 * d * d * d * d; });
    // centrifugal kernel, hub radius folded in through lam6
    const double lam6 = c.lam6;
    c.c12 = I([&](double x) {
        const double d = m.dphi(x);
        return (lam6 * (1.0 - x) + 0.5 * (1.0 - x * x)) * d * d;
    });
    c.c1l = m.c1(1.0);
    c.phil = m.phi(1.0);

    if (beam.model_kind == ModelKind::linear) {
        c.c3 = 0.0;
        c.c6 = 0.0;
        c.c7 = 0.0;
        c.c10 = 0.0;
        c.c1l = 0.0;
    }
    return c;
}

ModelCoefficients compute_coefficients(const BeamConfig& beam, double rel_tol) {
    beam.validate();
    return compute_coefficients(beam, make_mode_shape(beam), rel_tol);
}

} // namespace flexarm
