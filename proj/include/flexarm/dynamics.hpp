#pragma once

#include "flexarm/coefficients.hpp"

#include <Eigen/Dense>

namespace flexarm {

// State of the one-elastic-mode model in dimensionless time.
// R = (theta [rad], X~, Y~); velocities are d/dt~.
struct SystemState {
    double q = 0.0;                       // tip deflection q~
    Eigen::Vector3d R = Eigen::Vector3d::Zero();
    double qd = 0.0;
    Eigen::Vector3d Rd = Eigen::Vector3d::Zero();
    double t = 0.0;                       // t~

    bool within_bound(const ModelCoefficients& c) const { return std::abs(q) < c.q_limit; }
};

// u = (tau l / EI, F_x l^2 / EI, F_y l^2 / EI)
using ControlInput = Eigen::Vector3d;

// Blocks of the 4x4 system  [Mff Mfr; Mfr^T Mrr] (qdd, Rdd) = (Nf, Nr) + (0, u)
struct AssembledDynamics {
    double Mff = 0.0;
    Eigen::Vector3d Mfr = Eigen::Vector3d::Zero();
    Eigen::Matrix3d Mrr = Eigen::Matrix3d::Zero();
    double Nf = 0.0;
    Eigen::Vector3d Nr = Eigen::Vector3d::Zero();

    Eigen::Matrix4d full_mass() const;
    Eigen::Vector4d full_force() const;   // (Nf, Nr)
};

struct Equilibrium {
    double theta = 0.0;   // rad
    double q = 0.0;       // q~ bar
    double tau = 0.0;     // tau_bar l / EI
    double Fx = 0.0;      // F_bar_x l^2 / EI
    double Fy = 0.0;      // F_bar_y l^2 / EI
};

// Optional viscous elastic damping -2*zeta*qd added to Nf (default off,
// which keeps the free motion conservative).
AssembledDynamics assemble(const SystemState& s, const ModelCoefficients& c,
                           double modal_damping = 0.0);

// Solves the 4x4 system for (qdd, Rdd). Throws NumericalError if the mass
// matrix is not positive definite or its condition estimate exceeds 1e12.
struct Accelerations {
    double qdd = 0.0;
    Eigen::Vector3d Rdd = Eigen::Vector3d::Zero();
};
Accelerations accelerations(const SystemState& s, const ControlInput& u,
                            const ModelCoefficients& c, double modal_damping = 0.0);

// Elastic equation under a prescribed rigid trajectory:
//   qdd = (Nf - Mfr . Rdd_d) / Mff
double elastic_accel(double q, double qd, const Eigen::Vector3d& R_d,
                     const Eigen::Vector3d& Rd_d, const Eigen::Vector3d& Rdd_d,
                     const ModelCoefficients& c, double modal_damping = 0.0);

// Static equilibrium at hub angle theta: the cubic in q_bar is solved and
// the smallest-magnitude real root taken, then the torque and forces are
// back-substituted.
Equilibrium equilibrium(double theta, const ModelCoefficients& c);

// residual of the four steady-state equations at a candidate equilibrium
double equilibrium_residual(const Equilibrium& e, const ModelCoefficients& c);

struct EnergyBreakdown {
    double T = 0.0;   // (1/2) v^T M v with the assembled mass matrix
    double U = 0.0;   // elastic + axial + gravity potential
    double E = 0.0;   // T + U; conserved along free motion
};
EnergyBreakdown energy(const SystemState& s, const ModelCoefficients& c);

} // namespace flexarm
