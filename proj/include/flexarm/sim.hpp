#pragma once

#include "flexarm/dynamics.hpp"
#include "flexarm/integrator.hpp"
#include "flexarm/trajectory.hpp"

#include <array>
#include <functional>
#include <vector>

namespace flexarm {

struct SimConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.0;       // 0 = no cap
    double horizon = 5.0;        // t~ end
    double sample_period = 0.01; // t~ between output rows
    double modal_damping = 0.0;

    void validate() const;
};

// One output row per sample instant; S columns are zero unless a controller
// fills them in.
struct TimeSeries {
    static constexpr int kColumns = 18;
    static const std::array<const char*, kColumns>& column_names();

    std::vector<std::array<double, kColumns>> rows;

    // column indices
    enum Col {
        kT = 0, kQ, kTheta, kX, kY, kQd, kThetad, kXd, kYd,
        kU1, kU2, kU3, kS1, kS2, kS3, kKin, kPot, kEtot
    };
};

// Full state packed for integration: (q~, theta, X~, Y~, and their rates).
using StateVector = Eigen::Matrix<double, 8, 1>;

StateVector pack_state(const SystemState& s);
SystemState unpack_state(const StateVector& x, double t);

// Open-loop input: u(t~, state). Use a constant lambda for free motion.
using InputFn = std::function<ControlInput(double, const SystemState&)>;

// Integrates the full four-DOF model under the given input. Throws
// NumericalError if the elastic coordinate leaves the validity bound.
TimeSeries simulate(const ModelCoefficients& coeffs, const SystemState& initial,
                    const InputFn& input, const SimConfig& cfg);

// Residual-vibration cost of a prescribed rigid trajectory: the elastic
// equation is integrated over [0, 3 T_f] from (q~, q~') = (q_bar(theta_i), 0)
// and the cost is max over t~ > 2 T_f of |q~ - q_bar(theta_f)|. Returns
// +inf when the run leaves the validity bound or fails numerically.
double evaluate_cost(const RigidTrajectory& traj, const ModelCoefficients& coeffs,
                     const SimConfig& cfg);

// Elastic response under the prescribed trajectory, sampled for inspection;
// columns kU*/kS* are zero and the rigid columns follow the trajectory.
TimeSeries simulate_prescribed(const RigidTrajectory& traj, const ModelCoefficients& coeffs,
                               const SimConfig& cfg);

} // namespace flexarm
