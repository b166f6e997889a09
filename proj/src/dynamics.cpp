#include "flexarm/dynamics.hpp"

#include "flexarm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace flexarm {

Eigen::Matrix4d AssembledDynamics::full_mass() const {
    Eigen::Matrix4d M;
    M(0, 0) = Mff;
    M.block<1, 3>(0, 1) = Mfr.transpose();
    M.block<3, 1>(1, 0) = Mfr;
    M.block<3, 3>(1, 1) = Mrr;
    return M;
}

Eigen::Vector4d AssembledDynamics::full_force() const {
    Eigen::Vector4d N;
    N(0) = Nf;
    N.tail<3>() = Nr;
    return N;
}

AssembledDynamics assemble(const SystemState& s, const ModelCoefficients& c,
                           double modal_damping) {
    const double q = s.q, qd = s.qd;
    const double th = s.R(0), thd = s.Rd(0);
    const double q2 = q * q, q3 = q2 * q, q4 = q2 * q2;
    const double sn = std::sin(th), cs = std::cos(th);

    // recurring composite groups (beam + tip-mass contributions)
    const double A = c.c5 + c.lam2 * c.phil;     // first moment of the shape
    const double Bq = c.c4 + c.lam2 * c.c1l;     // foreshortening moment
    const double offs = 0.5 + c.lam6 * (1.0 + c.lam2) + c.lam2; // static axial moment

    AssembledDynamics d;
    d.Mff = c.c8 + c.lam2 * c.phil * c.phil
          + 4.0 * q2 * (c.c6 + c.lam2 * c.c1l * c.c1l);
    d.Mfr(0) = 0.5 * c.c9 + 0.5 * c.c10 * q2
             + c.lam2 * c.phil * (1.0 + c.c1l * q2)
             + c.lam6 * (c.c5 + c.lam2 * c.phil);
    d.Mfr(1) = -A * sn - 2.0 * Bq * q * cs;
    d.Mfr(2) = A * cs - 2.0 * Bq * q * sn;

    d.Mrr(0, 0) = (c.c6 + c.lam2 * c.c1l * c.c1l) * q4
                + (c.c8 - c.c7 + c.lam2 * (c.phil * c.phil - 2.0 * c.c1l)) * q2
                - 2.0 * c.lam6 * Bq * q2
                + 1.0 / 3.0 + c.lam3 + c.lam6 + c.lam6 * c.lam6
                + c.lam2 * (1.0 + c.lam6) * (1.0 + c.lam6);
    d.Mrr(0, 1) = d.Mrr(1, 0) = (Bq * q2 - offs) * sn - A * q * cs;
    d.Mrr(0, 2) = d.Mrr(2, 0) = (offs - Bq * q2) * cs - A * q * sn;
    d.Mrr(1, 1) = d.Mrr(2, 2) = c.lam1 + c.lam2 + 1.0;
    d.Mrr(1, 2) = d.Mrr(2, 1) = 0.0;

    const double qd2 = qd * qd, thd2 = thd * thd;
    d.Nf = -c.c2 * q - 2.0 * c.c3 * q3 - 2.0 * c.lam5 * c.lam5 * c.c11 * q3
         + (2.0 * (c.c6 + c.lam2 * c.c1l * c.c1l) * q3
            + (c.c8 - c.c7 + c.lam2 * (c.phil * c.phil - 2.0 * c.c1l)
               - 2.0 * c.lam6 * Bq) * q) * thd2
         - 4.0 * (c.c6 + c.lam2 * c.c1l * c.c1l) * q * qd2
         + c.lam4 * (2.0 * Bq * q * sn - A * cs)
         - 2.0 * modal_damping * qd;

    d.Nr(0) = -(c.c10 + 2.0 * c.lam2 * c.c1l * c.phil) * q * qd2
            + (-4.0 * (c.c6 + c.lam2 * c.c1l * c.c1l) * q2
               + 2.0 * (c.c7 - c.c8) + 4.0 * c.lam6 * Bq
               + c.lam2 * (4.0 * c.c1l - 2.0 * c.phil * c.phil)) * q * qd * thd
            + c.lam4 * (A * q * sn + (Bq * q2 - c.lam2 - 0.5) * cs);

    const double rad = -Bq * q2 * thd2 + 2.0 * Bq * qd2 + 2.0 * A * qd * thd + offs * thd2;
    const double tan_ = 4.0 * Bq * q * qd * thd + A * q * thd2;
    d.Nr(1) = -tan_ * sn + rad * cs;
    d.Nr(2) = tan_ * cs + rad * sn
            - c.lam4 * (1.0 + c.lam1 + c.lam2 + c.hub_mass_ratio());
    return d;
}

Accelerations accelerations(const SystemState& s, const ControlInput& u,
                            const ModelCoefficients& c, double modal_damping) {
    if (!s.within_bound(c))
        throw NumericalError("state outside validity bound |q~| < "
                             + std::to_string(c.q_limit));
    const AssembledDynamics d = assemble(s, c, modal_damping);
    const Eigen::Matrix4d M = d.full_mass();
    Eigen::Vector4d rhs = d.full_force();
    rhs.tail<3>() += u;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(M);
    const auto& ev = es.eigenvalues();
    if (ev(0) <= 0.0 || ev(3) / ev(0) > 1e12)
        throw NumericalError("mass matrix singular or ill-conditioned (state out of validity)");
    const Eigen::Vector4d x = es.eigenvectors()
                            * (es.eigenvectors().transpose() * rhs).cwiseQuotient(ev);
    Accelerations a;
    a.qdd = x(0);
    a.Rdd = x.tail<3>();
    return a;
}

double elastic_accel(double q, double qd, const Eigen::Vector3d& R_d,
                     const Eigen::Vector3d& Rd_d, const Eigen::Vector3d& Rdd_d,
                     const ModelCoefficients& c, double modal_damping) {
    SystemState s;
    s.q = q;
    s.qd = qd;
    s.R = R_d;
    s.Rd = Rd_d;
    const AssembledDynamics d = assemble(s, c, modal_damping);
    if (d.Mff <= 0.0) throw NumericalError("Mff <= 0: state out of validity");
    return (d.Nf - d.Mfr.dot(Rdd_d)) / d.Mff;
}

namespace {

// real roots of a*x^3 + p*x + r = 0 (depressed cubic, possibly degenerate)
std::array<double, 3> depressed_cubic_roots(double a, double p, double r, int& n_roots) {
    std::array<double, 3> roots{};
    if (a == 0.0) {
        if (p == 0.0) { n_roots = 0; return roots; }
        n_roots = 1;
        roots[0] = -r / p;
        return roots;
    }
    const double P = p / a, R = r / a;
    const double disc = -4.0 * P * P * P - 27.0 * R * R;
    if (disc > 0.0) {
        // three real roots, trigonometric form (requires P < 0)
        const double mP3 = std::sqrt(-P / 3.0);
        const double arg = std::clamp(3.0 * R / (2.0 * P * mP3), -1.0, 1.0);
        const double ac = std::acos(arg) / 3.0;
        n_roots = 3;
        for (int k = 0; k < 3; ++k)
            roots[k] = 2.0 * mP3 * std::cos(ac - 2.0 * M_PI * k / 3.0);
        return roots;
    }
    // one real root, Cardano
    const double half_R = R / 2.0, third_P = P / 3.0;
    const double sq = std::sqrt(half_R * half_R + third_P * third_P * third_P);
    const double u = std::cbrt(-half_R + sq);
    const double v = std::cbrt(-half_R - sq);
    n_roots = 1;
    roots[0] = u + v;
    return roots;
}

} // namespace

Equilibrium equilibrium(double theta, const ModelCoefficients& c) {
    const double sn = std::sin(theta), cs = std::cos(theta);
    const double A = c.c5 + c.lam2 * c.phil;
    const double Bq = c.c4 + c.lam2 * c.c1l;

    // Nf at rest = a3 q^3 + a1 q + a0 = 0
    const double a3 = -2.0 * (c.c3 + c.lam5 * c.lam5 * c.c11);
    const double a1 = -c.c2 + 2.0 * c.lam4 * Bq * sn;
    const double a0 = -c.lam4 * A * cs;

    int n = 0;
    const auto roots = depressed_cubic_roots(a3, a1, a0, n);
    if (n == 0) throw NumericalError("equilibrium: degenerate elastic equation");
    double qbar = roots[0];
    for (int i = 1; i < n; ++i)
        if (std::abs(roots[i]) < std::abs(qbar)) qbar = roots[i];

    Equilibrium e;
    e.theta = theta;
    e.q = qbar;
    e.tau = -c.lam4 * (A * qbar * sn + (Bq * qbar * qbar - c.lam2 - 0.5) * cs);
    e.Fx = 0.0;
    e.Fy = c.lam4 * (1.0 + c.lam1 + c.lam2 + c.hub_mass_ratio());
    return e;
}

double equilibrium_residual(const Equilibrium& e, const ModelCoefficients& c) {
    SystemState s;
    s.q = e.q;
    s.R(0) = e.theta;
    const AssembledDynamics d = assemble(s, c);
    Eigen::Vector4d res;
    res(0) = d.Nf;
    res.tail<3>() = d.Nr + ControlInput(e.tau, e.Fx, e.Fy);
    return res.cwiseAbs().maxCoeff();
}

EnergyBreakdown energy(const SystemState& s, const ModelCoefficients& c) {
    const AssembledDynamics d = assemble(s, c);
    Eigen::Vector4d v;
    v(0) = s.qd;
    v.tail<3>() = s.Rd;

    EnergyBreakdown e;
    e.T = 0.5 * v.dot(d.full_mass() * v);

    const double q = s.q, q2 = q * q, q4 = q2 * q2;
    const double sn = std::sin(s.R(0)), cs = std::cos(s.R(0));
    const double Y = s.R(2);
    const double U_el = 0.5 * (c.c2 * q2 + c.c3 * q4);
    const double U_ax = 0.5 * c.lam5 * c.lam5 * c.c11 * q4;
    const double U_g = c.lam4 * ((0.5 - q2 * c.c4) * sn + q * c.c5 * cs + Y
                                 + c.lam2 * ((1.0 - q2 * c.c1l) * sn + q * c.phil * cs + Y)
                                 + (c.lam1 + c.hub_mass_ratio()) * Y);
    e.U = U_el + U_ax + U_g;
    e.E = e.T + e.U;
    return e;
}

} // namespace flexarm
