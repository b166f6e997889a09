#pragma once

#include "flexarm/beam.hpp"

namespace flexarm {

// Smallest positive root of the clamped-mass frequency equation
//   1 + cos(B) cosh(B) + alpha B (cos(B) sinh(B) - cosh(B) sin(B)) = 0
// bracketed on (0, 4] and refined by bisection.
double solve_frequency_equation(double alpha);

// residual of the frequency equation, scaled so a converged root reads ~0
double frequency_equation_residual(double beta_l, double alpha);

// First clamped-mass eigenfunction of the Euler-Bernoulli beam.
// Evaluators work on the normalized coordinate xi = s/l in [0, 1] and
// return the dimensionless shape and its xi-derivatives; all of them are
// closed-form, including the running integral c1.
class ModeShape {
public:
    ModeShape(double beta_l, const BeamConfig& beam);

    double mass_ratio() const { return alpha_; }
    double root() const { return beta_l_; }              // B = beta_1 l
    double natural_frequency() const { return omega1_; } // rad/s

    double phi(double xi) const;
    double dphi(double xi) const;   // d phi / d xi
    double ddphi(double xi) const;
    double dddphi(double xi) const;
    double c1(double xi) const;     // (1/2) int_0^xi (dphi)^2, dimensionless

private:
    double beta_l_;
    double sigma_; // (cos B + cosh B) / (sin B + sinh B)
    double alpha_;
    double omega1_;
};

// Convenience: solve the frequency equation for the beam and build the shape.
ModeShape make_mode_shape(const BeamConfig& beam);

} // namespace flexarm
