#pragma once

#include "flexarm/sim.hpp"

#include <Eigen/Dense>

namespace flexarm {

struct SmcGains {
    Eigen::Vector3d K{5.0, 5.0, 5.0};        // diagonal of the surface gain
    Eigen::Vector3d Gamma{1.0, 0.5, 0.5};    // elastic augmentation weights
    double gamma4 = 2.0;
    Eigen::Vector3d A = Eigen::Vector3d::Zero(); // reaching gains (synthesized)
    Eigen::Vector3d psi{0.5, 0.5, 0.5};      // reaching margins
    bool compensate_elastic_accel = false;   // keep the elastic-acceleration
                                             // feedback instead of folding it
                                             // into the uncertainty bound
    void validate() const;
};

struct UncertaintyModel {
    Eigen::Vector3d eta = Eigen::Vector3d::Zero(); // drift bounds
    Eigen::Matrix3d D = Eigen::Matrix3d::Zero();   // input-map bound, ||D||inf <= 1
    double epsilon = 0.0;                          // injected amplitude
    double omega = 20.0;                           // injected frequency (1/s)

    void validate() const;
};

// Rigid-mode dynamics with the elastic coordinate eliminated:
//   Rdd = Fhat + Bhat u   (when qdd tracks the elastic equation)
struct RigidDynamics {
    Eigen::Vector3d Fhat = Eigen::Vector3d::Zero();
    Eigen::Matrix3d Bhat = Eigen::Matrix3d::Zero();
};

RigidDynamics rigid_dynamics(const SystemState& s, const ModelCoefficients& c);

// S = Edot + K E + Gamma (qd + gamma4 (q - q_bar)), E = R - R_d
Eigen::Vector3d sliding_surface(const SystemState& s, const Eigen::Vector3d& R_d,
                                const Eigen::Vector3d& Rd_d, double q_bar,
                                const SmcGains& g);

ControlInput control_law(const SystemState& s, const Eigen::Vector3d& R_d,
                         const Eigen::Vector3d& Rd_d, const Eigen::Vector3d& Rdd_d,
                         double q_bar, const SmcGains& g, const ModelCoefficients& c);

// Solves the reaching-gain system
//   (pi/2) [(1 - D_ii) A_i + sum_j D_ij A_j] = psi_i + eta_i + sum_j D_ij b_j
// for A, where b_j bounds the commanded rigid acceleration terms. Throws
// NumericalError when the coupling fails the Perron condition or any A_i <= 0.
// `decoupled` switches to the conservative scalar fallback
//   A_i = (psi_i + eta_i + sum_j D_ij b_j) / ((pi/2)(1 - ||D||inf)).
Eigen::Vector3d synthesize_gains(const UncertaintyModel& unc, const Eigen::Vector3d& psi,
                                 const Eigen::Vector3d& b, bool decoupled = false);

// Multiplicative parameter perturbation applied to the plant-side model:
// every physical coefficient becomes alpha (1 + eps sin(omega t)), with t in
// seconds, so t~ is rescaled through the configured time scale.
ModelCoefficients inject_uncertainty(const ModelCoefficients& c, double epsilon,
                                     double omega, double t_seconds);

// Samples the planned trajectory to bound |Rdd_d - K Edot - Fhat - Gamma(...)|
// componentwise (200 points, 1.5x safety), assuming near-tracking states.
Eigen::Vector3d estimate_reaching_bounds(const RigidTrajectory& traj, const SmcGains& g,
                                         const ModelCoefficients& c);

// eta_i = sup over the planned trajectory of |Fhat(perturbed) - Fhat(nominal)|
// under a +-`relative` parameter sweep (both extremes sampled).
Eigen::Vector3d estimate_drift_bounds(const RigidTrajectory& traj, const ModelCoefficients& c,
                                      double relative = 0.1);

// Closed loop: the controller uses the nominal coefficients, the plant the
// perturbed ones. time_scale converts t~ to seconds for the injection.
TimeSeries run_closed_loop(const RigidTrajectory& traj, const SmcGains& gains,
                           const UncertaintyModel& unc, const ModelCoefficients& nominal,
                           double time_scale, const SimConfig& cfg);

} // namespace flexarm
