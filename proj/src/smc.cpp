#include "flexarm/smc.hpp"

#include "flexarm/errors.hpp"
#include "flexarm/integrator.hpp"

#include <cmath>

namespace flexarm {

void SmcGains::validate() const {
    if (!(K.minCoeff() > 0.0)) throw ValidationError("smc: surface gains k_i must be > 0");
    if (!(gamma4 > 0.0)) throw ValidationError("smc: gamma4 must be > 0");
    if (!(psi.minCoeff() > 0.0)) throw ValidationError("smc: reaching margins psi_i must be > 0");
}

void UncertaintyModel::validate() const {
    if (!(eta.minCoeff() >= 0.0)) throw ValidationError("smc: eta bounds must be >= 0");
    if (D.minCoeff() < 0.0) throw ValidationError("smc: D entries must be >= 0");
    for (int i = 0; i < 3; ++i) {
        if (D.row(i).sum() > 1.0)
            throw ValidationError("smc: input-map bound rows must sum to <= 1");
    }
    if (epsilon < 0.0 || epsilon > 0.2)
        throw ValidationError("smc: injection amplitude must lie in [0, 0.2]");
}

namespace {

Eigen::Matrix3d schur_complement(const AssembledDynamics& d) {
    if (std::abs(d.Mff) < 1e-300)
        throw NumericalError("smc: vanishing elastic inertia");
    return d.Mrr - (d.Mfr * d.Mfr.transpose()) / d.Mff;
}

} // namespace

RigidDynamics rigid_dynamics(const SystemState& s, const ModelCoefficients& c) {
    const AssembledDynamics d = assemble(s, c);
    const Eigen::Matrix3d schur = schur_complement(d);
    Eigen::FullPivLU<Eigen::Matrix3d> lu(schur);
    if (!lu.isInvertible())
        throw NumericalError("smc: singular rigid-mode inertia (Schur complement)");
    RigidDynamics rd;
    rd.Bhat = lu.inverse();
    rd.Fhat = rd.Bhat * (d.Nr - (d.Nf / d.Mff) * d.Mfr);
    return rd;
}

Eigen::Vector3d sliding_surface(const SystemState& s, const Eigen::Vector3d& R_d,
                                const Eigen::Vector3d& Rd_d, double q_bar,
                                const SmcGains& g) {
    const Eigen::Vector3d E = s.R - R_d;
    const Eigen::Vector3d Ed = s.Rd - Rd_d;
    return Ed + g.K.cwiseProduct(E) + g.Gamma * (s.qd + g.gamma4 * (s.q - q_bar));
}

ControlInput control_law(const SystemState& s, const Eigen::Vector3d& R_d,
                         const Eigen::Vector3d& Rd_d, const Eigen::Vector3d& Rdd_d,
                         double q_bar, const SmcGains& g, const ModelCoefficients& c) {
    const AssembledDynamics d = assemble(s, c);
    const Eigen::Matrix3d schur = schur_complement(d);
    const Eigen::Vector3d drift = d.Nr - (d.Nf / d.Mff) * d.Mfr; // schur^-1 * drift = Fhat

    const Eigen::Vector3d Ed = s.Rd - Rd_d;
    const Eigen::Vector3d S = sliding_surface(s, R_d, Rd_d, q_bar, g);
    const Eigen::Vector3d rhs = Rdd_d - g.K.cwiseProduct(Ed) - g.gamma4 * s.qd * g.Gamma
                                - g.A.cwiseProduct(S.array().tanh().matrix());

    if (!g.compensate_elastic_accel) {
        // u = Bhat^-1 (rhs - Fhat); the elastic acceleration in S-dot is
        // treated as bounded uncertainty
        return schur * rhs - drift;
    }

    // exact elastic-acceleration compensation: qdd depends on u through the
    // rigid acceleration, giving a rank-one correction to the input map
    Eigen::FullPivLU<Eigen::Matrix3d> lu(schur);
    if (!lu.isInvertible())
        throw NumericalError("smc: singular rigid-mode inertia (Schur complement)");
    const Eigen::Matrix3d Bhat = lu.inverse();
    const Eigen::Vector3d Fhat = Bhat * drift;
    const double qdd_free = (d.Nf - d.Mfr.dot(Fhat)) / d.Mff;
    const Eigen::Matrix3d Meff =
        (Eigen::Matrix3d::Identity() - g.Gamma * d.Mfr.transpose() / d.Mff) * Bhat;
    const Eigen::Vector3d rhs2 = rhs - Fhat - g.Gamma * qdd_free;
    Eigen::FullPivLU<Eigen::Matrix3d> lu2(Meff);
    if (!lu2.isInvertible())
        throw NumericalError("smc: singular compensated input map");
    return lu2.solve(rhs2);
}

Eigen::Vector3d synthesize_gains(const UncertaintyModel& unc, const Eigen::Vector3d& psi,
                                 const Eigen::Vector3d& b, bool decoupled) {
    unc.validate();
    if (!(psi.minCoeff() > 0.0))
        throw ValidationError("smc: reaching margins psi_i must be > 0");
    constexpr double half_pi = M_PI / 2.0;
    const Eigen::Vector3d rhs = psi + unc.eta + unc.D * b;

    if (decoupled) {
        const double dnorm = unc.D.cwiseAbs().rowwise().sum().maxCoeff();
        if (dnorm >= 1.0)
            throw NumericalError("smc: decoupled synthesis needs ||D||inf < 1");
        return rhs / (half_pi * (1.0 - dnorm));
    }

    Eigen::Matrix3d coupling = unc.D;
    coupling.diagonal().setZero();
    const double radius = coupling.eigenvalues().cwiseAbs().maxCoeff();
    if (radius >= 1.0)
        throw NumericalError("smc: gain synthesis coupling fails the Perron condition");
    const Eigen::Matrix3d G = half_pi * (Eigen::Matrix3d::Identity() + coupling);
    const Eigen::Vector3d A = G.fullPivLu().solve(rhs);
    if ((G * A - rhs).cwiseAbs().maxCoeff() > 1e-10)
        throw NumericalError("smc: gain synthesis solve did not converge");
    if (!(A.minCoeff() > 0.0))
        throw NumericalError("smc: gain synthesis produced a non-positive reaching gain");
    return A;
}

ModelCoefficients inject_uncertainty(const ModelCoefficients& c, double epsilon,
                                     double omega, double t_seconds) {
    if (epsilon < 0.0) throw ValidationError("smc: injection amplitude must be >= 0");
    const double f = 1.0 + epsilon * std::sin(omega * t_seconds);
    // only the physical parameter groups are perturbed; the c and phi
    // entries are normalized shape integrals (pure geometry), and scaling
    // them would not correspond to any physical parameter error
    ModelCoefficients p = c;
    p.lam1 *= f;
    p.lam2 *= f;
    p.lam3 *= f;
    p.lam4 *= f;
    return p;
}

Eigen::Vector3d estimate_reaching_bounds(const RigidTrajectory& traj, const SmcGains& g,
                                         const ModelCoefficients& c) {
    constexpr int kSamples = 200;
    constexpr double kSafety = 1.5;
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for (int k = 0; k <= kSamples; ++k) {
        const double t = traj.tf * static_cast<double>(k) / kSamples;
        Eigen::Vector3d R, Rd, Rdd;
        traj.eval(t, R, Rd, Rdd);
        SystemState s;
        s.R = R;
        s.Rd = Rd;
        s.q = equilibrium(R(0), c).q;
        s.qd = 0.0;
        s.t = t;
        const RigidDynamics rd = rigid_dynamics(s, c);
        const double qdd = elastic_accel(s.q, s.qd, R, Rd, Rdd, c);
        const Eigen::Vector3d term = Rdd - rd.Fhat - g.Gamma * (qdd + g.gamma4 * s.qd);
        b = b.cwiseMax(term.cwiseAbs());
    }
    return kSafety * b;
}

Eigen::Vector3d estimate_drift_bounds(const RigidTrajectory& traj, const ModelCoefficients& c,
                                      double relative) {
    constexpr int kSamples = 200;
    // sin(omega t) = +-1 extremes of the multiplicative injection
    const ModelCoefficients lo = inject_uncertainty(c, relative, M_PI / 2.0, -1.0);
    const ModelCoefficients hi = inject_uncertainty(c, relative, M_PI / 2.0, 1.0);
    Eigen::Vector3d eta = Eigen::Vector3d::Zero();
    for (int k = 0; k <= kSamples; ++k) {
        const double t = traj.tf * static_cast<double>(k) / kSamples;
        SystemState s;
        Eigen::Vector3d R, Rd, Rdd;
        traj.eval(t, R, Rd, Rdd);
        s.R = R;
        s.Rd = Rd;
        s.q = equilibrium(R(0), c).q;
        s.qd = 0.0;
        s.t = t;
        const Eigen::Vector3d f0 = rigid_dynamics(s, c).Fhat;
        eta = eta.cwiseMax((rigid_dynamics(s, lo).Fhat - f0).cwiseAbs());
        eta = eta.cwiseMax((rigid_dynamics(s, hi).Fhat - f0).cwiseAbs());
    }
    return eta;
}

TimeSeries run_closed_loop(const RigidTrajectory& traj, const SmcGains& gains,
                           const UncertaintyModel& unc, const ModelCoefficients& nominal,
                           double time_scale, const SimConfig& cfg) {
    gains.validate();
    unc.validate();
    cfg.validate();
    if (!(gains.A.minCoeff() > 0.0))
        throw ValidationError("smc: reaching gains must be synthesized before running");

    auto desired = [&](double t, Eigen::Vector3d& R, Eigen::Vector3d& Rd, Eigen::Vector3d& Rdd) {
        traj.eval(t, R, Rd, Rdd);
    };
    const double q_bar = equilibrium(traj.final()(0), nominal).q;
    auto controller = [&](double t, const SystemState& s) {
        Eigen::Vector3d R, Rd, Rdd;
        desired(t, R, Rd, Rdd);
        return control_law(s, R, Rd, Rdd, q_bar, gains, nominal);
    };
    auto plant_coeffs = [&](double t) {
        return inject_uncertainty(nominal, unc.epsilon, unc.omega, t * time_scale);
    };

    OdeRhs rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        SystemState s = unpack_state(y, t);
        if (!s.within_bound(nominal))
            throw NumericalError("closed loop: elastic coordinate left the validity bound");
        const ControlInput u = controller(t, s);
        const Accelerations a = accelerations(s, u, plant_coeffs(t), cfg.modal_damping);
        dy.resize(8);
        dy(0) = s.qd;
        dy.segment<3>(1) = s.Rd;
        dy(4) = a.qdd;
        dy.segment<3>(5) = a.Rdd;
    };

    TimeSeries ts;
    auto observer = [&](double t, const Eigen::VectorXd& y) {
        SystemState s = unpack_state(y, t);
        Eigen::Vector3d R, Rd, Rdd;
        desired(t, R, Rd, Rdd);
        const ControlInput u = control_law(s, R, Rd, Rdd, q_bar, gains, nominal);
        const Eigen::Vector3d S = sliding_surface(s, R, Rd, q_bar, gains);
        const EnergyBreakdown en = energy(s, plant_coeffs(t));
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
        row[TimeSeries::kS1] = S(0);
        row[TimeSeries::kS2] = S(1);
        row[TimeSeries::kS3] = S(2);
        row[TimeSeries::kKin] = en.T;
        row[TimeSeries::kPot] = en.U;
        row[TimeSeries::kEtot] = en.E;
        ts.rows.push_back(row);
    };

    SystemState init;
    Eigen::Vector3d R0, Rd0, Rdd0;
    desired(0.0, R0, Rd0, Rdd0);
    init.R = R0;
    init.Rd = Rd0;
    init.q = equilibrium(R0(0), nominal).q;
    init.qd = 0.0;

    IntegratorOptions opt;
    opt.rel_tol = cfg.rel_tol;
    opt.abs_tol = cfg.abs_tol;
    opt.max_step = cfg.max_step;
    integrate_ode(rhs, pack_state(init), 0.0, cfg.horizon, opt, cfg.sample_period, observer);
    return ts;
}

} // namespace flexarm
