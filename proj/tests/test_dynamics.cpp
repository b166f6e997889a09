#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flexarm/coefficients.hpp"
#include "flexarm/dynamics.hpp"
#include "flexarm/sim.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

using namespace flexarm;

namespace {

BeamConfig reference_beam() {
    BeamConfig b;
    b.slenderness = 0.0;
    return b;
}

SystemState make_state(double q, double th, double x, double y,
                       double qd, double thd, double xd, double yd) {
    SystemState s;
    s.q = q;
    s.R = Eigen::Vector3d(th, x, y);
    s.Rd = Eigen::Vector3d(thd, xd, yd);
    s.qd = qd;
    return s;
}

SystemState from_vectors(const Eigen::Vector4d& pos, const Eigen::Vector4d& vel) {
    return make_state(pos(0), pos(1), pos(2), pos(3), vel(0), vel(1), vel(2), vel(3));
}

double kinetic(const Eigen::Vector4d& pos, const Eigen::Vector4d& vel,
               const ModelCoefficients& c) {
    return energy(from_vectors(pos, vel), c).T;
}

double potential(const Eigen::Vector4d& pos, const ModelCoefficients& c) {
    return energy(from_vectors(pos, Eigen::Vector4d::Zero()), c).U;
}

// Lagrangian oracle: derives the accelerations from the scalar energies
// alone.  M comes from the velocity Hessian of T (exact for a quadratic
// form under central differences), the velocity force from the
// configuration gradients of T and U:
//   M a = Q - dM/dt v + dT/dq - dU/dq
Eigen::Vector4d oracle_accelerations(const SystemState& s, const ControlInput& u,
                                     const ModelCoefficients& c) {
    const Eigen::Vector4d pos(s.q, s.R(0), s.R(1), s.R(2));
    const Eigen::Vector4d vel(s.qd, s.Rd(0), s.Rd(1), s.Rd(2));

    auto mass_at = [&](const Eigen::Vector4d& p) {
        Eigen::Matrix4d M;
        const double h = 1e-3;
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                Eigen::Vector4d vpp = Eigen::Vector4d::Zero(), vpm = vpp, vmp = vpp, vmm = vpp;
                vpp(i) += h; vpp(j) += h;
                vpm(i) += h; vpm(j) -= h;
                vmp(i) -= h; vmp(j) += h;
                vmm(i) -= h; vmm(j) -= h;
                M(i, j) = M(j, i) = (kinetic(p, vpp, c) - kinetic(p, vpm, c) -
                                     kinetic(p, vmp, c) + kinetic(p, vmm, c)) /
                                    (4.0 * h * h);
            }
        }
        return M;
    };

    // fourth-order stencils: the mass inverse amplifies rhs noise by ~1e2,
    // so second-order truncation would eat the 1e-8 comparison budget
    const double h = 1e-3;
    Eigen::Vector4d rhs(0.0, u(0), u(1), u(2));
    const Eigen::Matrix4d M = mass_at(pos);
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector4d p1 = pos, p2 = pos, m1 = pos, m2 = pos;
        p1(k) += h;
        p2(k) += 2.0 * h;
        m1(k) -= h;
        m2(k) -= 2.0 * h;
        const Eigen::Matrix4d dMk =
            (mass_at(m2) - 8.0 * mass_at(m1) + 8.0 * mass_at(p1) - mass_at(p2)) / (12.0 * h);
        // dM/dt v contribution of coordinate k, and dT/dq_k = v' dMk v / 2
        rhs -= vel(k) * (dMk * vel);
        rhs(k) += 0.5 * vel.dot(dMk * vel);
        rhs(k) -= (potential(m2, c) - 8.0 * potential(m1, c) + 8.0 * potential(p1, c) -
                   potential(p2, c)) / (12.0 * h);
    }
    return M.ldlt().solve(rhs);
}

} // namespace

TEST_CASE("mass matrix is symmetric and positive definite on random in-bound states") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uq(-c.q_limit, c.q_limit);
    std::uniform_real_distribution<double> uth(-M_PI, M_PI);
    std::uniform_real_distribution<double> ur(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const SystemState s = make_state(uq(rng), uth(rng), ur(rng), ur(rng),
                                         ur(rng), ur(rng), ur(rng), ur(rng));
        const Eigen::Matrix4d M = assemble(s, c).full_mass();
        CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-14);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(M);
        CHECK(es.eigenvalues()(0) > 0.0);
    }
}

TEST_CASE("accelerations agree with the Lagrangian oracle") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uq(-0.4, 0.4);
    std::uniform_real_distribution<double> uth(-M_PI, M_PI);
    std::uniform_real_distribution<double> ur(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        const SystemState s = make_state(uq(rng), uth(rng), ur(rng), ur(rng),
                                         ur(rng), ur(rng), ur(rng), ur(rng));
        const ControlInput u(ur(rng), ur(rng), ur(rng));
        const Accelerations a = accelerations(s, u, c);
        const Eigen::Vector4d ref = oracle_accelerations(s, u, c);
        const Eigen::Vector4d got(a.qdd, a.Rdd(0), a.Rdd(1), a.Rdd(2));
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(got(k) - ref(k)) <= 1e-8 * std::max(1.0, std::abs(ref(k))));
    }
}

TEST_CASE("zero-input free motion conserves the Jacobi energy") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    SystemState init = make_state(0.2, 0.4, 0.0, 0.0, 0.0, 0.3, 0.1, -0.1);
    SimConfig cfg;
    cfg.horizon = 5.0;
    const TimeSeries ts = simulate(c, init, [](double, const SystemState&) {
        return ControlInput::Zero();
    }, cfg);
    REQUIRE(ts.rows.size() > 100);
    const double e0 = ts.rows.front()[TimeSeries::kEtot];
    double drift = 0.0;
    for (const auto& row : ts.rows)
        drift = std::max(drift, std::abs(row[TimeSeries::kEtot] - e0));
    CHECK(drift / std::abs(e0) < 1e-6);
}

TEST_CASE("out-of-bound elastic coordinate is rejected") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    const SystemState s = make_state(0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(accelerations(s, ControlInput::Zero(), c), NumericalError);
}

TEST_CASE("hanging equilibrium is undeflected") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    const Equilibrium e = equilibrium(-M_PI / 2.0, c);
    CHECK(std::abs(e.q) < 1e-10);
    CHECK(e.Fx == 0.0);
}

TEST_CASE("horizontal equilibrium (regression)") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    const Equilibrium e = equilibrium(0.0, c);
    CHECK(e.q == doctest::Approx(0.12549589721654).epsilon(1e-10));
    CHECK(e.tau == doctest::Approx(0.85956789813015).epsilon(1e-10));
    CHECK(e.Fx == 0.0);
    CHECK(e.Fy == doctest::Approx(5.73388203017833).epsilon(1e-10));
    CHECK(equilibrium_residual(e, c) < 1e-12);
}

TEST_CASE("equilibrium residual vanishes over the angle range") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    for (double th = -M_PI; th <= M_PI; th += M_PI / 7.0)
        CHECK(equilibrium_residual(equilibrium(th, c), c) < 1e-10);
}

TEST_CASE("equilibrium force balances the total weight") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    // lam4 (1 + lam1 + lam2 + 2 lam3 / lam6^2): beam, slider, tip and hub
    const double expected = c.lam4 * (1.0 + c.lam1 + c.lam2 + c.hub_mass_ratio());
    CHECK(equilibrium(0.7, c).Fy == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("energy splits into kinetic and potential") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    const SystemState rest = make_state(0.1, 0.3, 0.2, -0.1, 0.0, 0.0, 0.0, 0.0);
    const EnergyBreakdown e = energy(rest, c);
    CHECK(e.T == 0.0);
    CHECK(e.E == e.U);
    SystemState moving = rest;
    moving.qd = 0.5;
    moving.Rd = Eigen::Vector3d(0.2, -0.3, 0.1);
    const EnergyBreakdown m = energy(moving, c);
    CHECK(m.T > 0.0);
    CHECK(m.U == e.U);
    CHECK(m.E == doctest::Approx(m.T + m.U).epsilon(1e-15));
}
