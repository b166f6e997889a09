#include "flexarm/sim.hpp"

#include "flexarm/errors.hpp"

#include <cmath>
#include <limits>

namespace flexarm {

void SimConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ValidationError("sim: tolerances must be > 0");
    if (!(horizon > 0.0)) throw ValidationError("sim: horizon must be > 0");
    if (!(sample_period > 0.0)) throw ValidationError("sim: sample period must be > 0");
    if (max_step < 0.0) throw ValidationError("sim: max step must be >= 0");
    if (modal_damping < 0.0) throw ValidationError("sim: modal damping must be >= 0");
}

const std::array<const char*, TimeSeries::kColumns>& TimeSeries::column_names() {
    static const std::array<const char*, kColumns> names = {
        "t", "q", "theta", "x", "y", "qd", "thetad", "xd", "yd",
        "u1", "u2", "u3", "s1", "s2", "s3", "T", "U", "E"};
    return names;
}

StateVector pack_state(const SystemState& s) {
    StateVector x;
    x << s.q, s.R(0), s.R(1), s.R(2), s.qd, s.Rd(0), s.Rd(1), s.Rd(2);
    return x;
}

SystemState unpack_state(const StateVector& x, double t) {
    SystemState s;
    s.q = x(0);
    s.R = x.segment<3>(1);
    s.qd = x(4);
    s.Rd = x.segment<3>(5);
    s.t = t;
    return s;
}

namespace {

IntegratorOptions make_options(const SimConfig& cfg) {
    IntegratorOptions opt;
    opt.rel_tol = cfg.rel_tol;
    opt.abs_tol = cfg.abs_tol;
    opt.max_step = cfg.max_step;
    return opt;
}

} // namespace

TimeSeries simulate(const ModelCoefficients& coeffs, const SystemState& initial,
                    const InputFn& input, const SimConfig& cfg) {
    cfg.validate();
    TimeSeries ts;
    ts.rows.reserve(static_cast<std::size_t>(cfg.horizon / cfg.sample_period) + 2);

    OdeRhs rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        SystemState s = unpack_state(y, t);
        if (!s.within_bound(coeffs))
            throw NumericalError("simulate: elastic coordinate left the validity bound");
        const ControlInput u = input(t, s);
        const Accelerations a = accelerations(s, u, coeffs, cfg.modal_damping);
        dy.resize(8);
        dy(0) = s.qd;
        dy.segment<3>(1) = s.Rd;
        dy(4) = a.qdd;
        dy.segment<3>(5) = a.Rdd;
    };

    auto observer = [&](double t, const Eigen::VectorXd& y) {
        SystemState s = unpack_state(y, t);
        const ControlInput u = input(t, s);
        const EnergyBreakdown en = energy(s, coeffs);
        std::array<double, TimeSeries::kColumns> row{};
        row[TimeSeries::kT] = t;
        row[TimeSeries::kQ] = s.q;
        row[TimeSeries::kTheta] = s.R(0);
        row[TimeSeries::kX] = s.R(1);
        row[TimeSeries::kY] = s.R(2);
        row[TimeSeries::kQd] = s.qd;
        row[TimeSeries::kThetad] = s.Rd(0);
        row[TimeSeries::kXd] = s.Rd(1);
        row[TimeSeries::kYd] = s.Rd(2);
        row[TimeSeries::kU1] = u(0);
        row[TimeSeries::kU2] = u(1);
        row[TimeSeries::kU3] = u(2);
        row[TimeSeries::kKin] = en.T;
        row[TimeSeries::kPot] = en.U;
        row[TimeSeries::kEtot] = en.E;
        ts.rows.push_back(row);
    };

    integrate_ode(rhs, pack_state(initial), initial.t, initial.t + cfg.horizon,
                  make_options(cfg), cfg.sample_period, observer);
    return ts;
}

namespace {

// rhs of the two-state elastic equation under the prescribed rigid motion
OdeRhs prescribed_rhs(const RigidTrajectory& traj, const ModelCoefficients& coeffs,
                      const SimConfig& cfg) {
    return [&traj, &coeffs, damping = cfg.modal_damping](
               double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        if (std::abs(y(0)) >= coeffs.q_limit)
            throw NumericalError("prescribed run: elastic coordinate left the validity bound");
        Eigen::Vector3d R, Rd, Rdd;
        traj.eval(t, R, Rd, Rdd);
        dy.resize(2);
        dy(0) = y(1);
        dy(1) = elastic_accel(y(0), y(1), R, Rd, Rdd, coeffs, damping);
    };
}

Eigen::Vector2d prescribed_initial(const RigidTrajectory& traj, const ModelCoefficients& coeffs) {
    const double theta_i = traj.initial()(0);
    return {equilibrium(theta_i, coeffs).q, 0.0};
}

} // namespace

double evaluate_cost(const RigidTrajectory& traj, const ModelCoefficients& coeffs,
                     const SimConfig& cfg) {
    cfg.validate();
    const double tf = traj.tf;
    const double q_final = equilibrium(traj.final()(0), coeffs).q;

    double cost = 0.0;
    bool bad = false;
    auto observer = [&](double t, const Eigen::VectorXd& y) {
        if (!std::isfinite(y(0))) { bad = true; return; }
        if (t > 2.0 * tf) cost = std::max(cost, std::abs(y(0) - q_final));
    };

    try {
        integrate_ode(prescribed_rhs(traj, coeffs, cfg),
                      prescribed_initial(traj, coeffs), 0.0, 3.0 * tf,
                      make_options(cfg), cfg.sample_period, observer);
    } catch (const NumericalError&) {
        return std::numeric_limits<double>::infinity();
    }
    if (bad) return std::numeric_limits<double>::infinity();
    return cost;
}

TimeSeries simulate_prescribed(const RigidTrajectory& traj, const ModelCoefficients& coeffs,
                               const SimConfig& cfg) {
    cfg.validate();
    TimeSeries ts;

    auto observer = [&](double t, const Eigen::VectorXd& y) {
        Eigen::Vector3d R, Rd, Rdd;
        traj.eval(t, R, Rd, Rdd);
        SystemState s;
        s.q = y(0);
        s.qd = y(1);
        s.R = R;
        s.Rd = Rd;
        s.t = t;
        const EnergyBreakdown en = energy(s, coeffs);
        std::array<double, TimeSeries::kColumns> row{};
        row[TimeSeries::kT] = t;
        row[TimeSeries::kQ] = s.q;
        row[TimeSeries::kTheta] = R(0);
        row[TimeSeries::kX] = R(1);
        row[TimeSeries::kY] = R(2);
        row[TimeSeries::kQd] = s.qd;
        row[TimeSeries::kThetad] = Rd(0);
        row[TimeSeries::kXd] = Rd(1);
        row[TimeSeries::kYd] = Rd(2);
        row[TimeSeries::kKin] = en.T;
        row[TimeSeries::kPot] = en.U;
        row[TimeSeries::kEtot] = en.E;
        ts.rows.push_back(row);
    };

    integrate_ode(prescribed_rhs(traj, coeffs, cfg),
                  prescribed_initial(traj, coeffs), 0.0, cfg.horizon,
                  make_options(cfg), cfg.sample_period, observer);
    return ts;
}

} // namespace flexarm
