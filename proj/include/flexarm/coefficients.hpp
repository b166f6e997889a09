#pragma once

#include "flexarm/beam.hpp"
#include "flexarm/mode_shape.hpp"

namespace flexarm {

// Dimensionless parameter groups and spatial-integral constants of the
// one-mode model. All c entries are the tilde (dimensionless) values.
struct ModelCoefficients {
    double lam1 = 0, lam2 = 0, lam3 = 0, lam4 = 0, lam5 = 0, lam6 = 0;
    double c1l = 0;                     // c~1(l)
    double c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0, c7 = 0, c8 = 0,
           c9 = 0, c10 = 0, c11 = 0, c12 = 0;
    double phil = 0;                    // phi(l)
    double q_limit = 0.45;              // validity bound on |q~|
    ModelKind model_kind = ModelKind::nonlinear;

    // hub mass over beam mass, 2*lam3/lam6^2 (uniform-disk hub)
    double hub_mass_ratio() const { return lam6 > 0.0 ? 2.0 * lam3 / (lam6 * lam6) : 0.0; }
};

// Evaluates the A-type spatial integrals by adaptive quadrature of the
// closed-form mode shape, nondimensionalizes them, and fills in the
// lambda groups. In the linear model kind the c~3, c~6, c~7, c~10 and
// c~1(l) entries are forced to zero.
ModelCoefficients compute_coefficients(const BeamConfig& beam, const ModeShape& shape,
                                       double rel_tol = 1e-10);

ModelCoefficients compute_coefficients(const BeamConfig& beam, double rel_tol = 1e-10);

} // namespace flexarm
