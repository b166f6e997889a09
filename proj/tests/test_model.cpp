#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flexarm/beam.hpp"
#include "flexarm/coefficients.hpp"
#include "flexarm/mode_shape.hpp"

#include <cmath>
#include <functional>

using namespace flexarm;

namespace {

// the defaults of BeamConfig are the reference arm; lambda5 = 0 matches the
// shipped configuration (negligible cross-section gyration radius)
BeamConfig reference_beam() {
    BeamConfig b;
    b.slenderness = 0.0;
    return b;
}

// frequency equation written out independently of the library
double freq_eq(double B, double alpha) {
    return 1.0 + std::cos(B) * std::cosh(B) +
           alpha * B * (std::cos(B) * std::sinh(B) - std::cosh(B) * std::sin(B));
}

double bisect_root(double alpha, double lo, double hi) {
    double flo = freq_eq(lo, alpha);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = freq_eq(mid, alpha);
        if (flo * fm <= 0.0) hi = mid;
        else { lo = mid; flo = fm; }
    }
    return 0.5 * (lo + hi);
}

// plain adaptive Simpson, enough for smooth one-mode integrands
double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    double s = f(a) + f(b);
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("frequency root without tip mass matches the classic value") {
    const double B = solve_frequency_equation(0.0);
    CHECK(B == doctest::Approx(1.8751040687119611).epsilon(1e-12));
    CHECK(std::abs(frequency_equation_residual(B, 0.0)) < 1e-12);
}

TEST_CASE("tip mass monotonically lowers the fundamental root") {
    double prev = solve_frequency_equation(0.0);
    for (double alpha : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
        const double B = solve_frequency_equation(alpha);
        CHECK(B < prev);
        CHECK(std::abs(frequency_equation_residual(B, alpha)) < 1e-12);
        prev = B;
    }
}

TEST_CASE("root for the reference arm matches an independent bisection") {
    const double alpha = reference_beam().mass_ratio();
    CHECK(alpha == doctest::Approx(0.05 / (0.27 * 2.0)).epsilon(1e-15));
    const double oracle = bisect_root(alpha, 1.0, 3.0);
    const double B = solve_frequency_equation(alpha);
    CHECK(B == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(B == doctest::Approx(1.7320934325965678).epsilon(1e-12));
}

TEST_CASE("mode shape satisfies the clamped root condition") {
    const ModeShape ms = make_mode_shape(reference_beam());
    CHECK(std::abs(ms.phi(0.0)) < 1e-14);
    CHECK(std::abs(ms.dphi(0.0)) < 1e-14);
}

TEST_CASE("mode shape point values (regression)") {
    const ModeShape ms = make_mode_shape(reference_beam());
    CHECK(ms.phi(1.0) == doctest::Approx(-1.7807905509283413).epsilon(1e-12));
    CHECK(ms.phi(0.5) == doctest::Approx(-0.5910065207189660).epsilon(1e-12));
    CHECK(ms.dphi(0.5) == doctest::Approx(-2.0521415546121538).epsilon(1e-12));
    CHECK(ms.c1(1.0) == doctest::Approx(1.8580357018241458).epsilon(1e-12));
}

TEST_CASE("shape derivatives agree with finite differences") {
    const ModeShape ms = make_mode_shape(reference_beam());
    const double h = 1e-6;
    for (double xi : {0.1, 0.3, 0.5, 0.8, 0.95}) {
        const double d1 = (ms.phi(xi + h) - ms.phi(xi - h)) / (2.0 * h);
        const double d2 = (ms.dphi(xi + h) - ms.dphi(xi - h)) / (2.0 * h);
        const double d3 = (ms.ddphi(xi + h) - ms.ddphi(xi - h)) / (2.0 * h);
        CHECK(ms.dphi(xi) == doctest::Approx(d1).epsilon(1e-8));
        CHECK(ms.ddphi(xi) == doctest::Approx(d2).epsilon(1e-8));
        CHECK(ms.dddphi(xi) == doctest::Approx(d3).epsilon(1e-8));
    }
}

TEST_CASE("c1 equals the half-integral of the squared slope") {
    const ModeShape ms = make_mode_shape(reference_beam());
    for (double xi : {0.25, 0.6, 1.0}) {
        const double oracle =
            0.5 * simpson([&](double x) { return ms.dphi(x) * ms.dphi(x); }, 0.0, xi);
        CHECK(ms.c1(xi) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("natural frequency follows from the root") {
    const BeamConfig b = reference_beam();
    const ModeShape ms = make_mode_shape(b);
    const double expected = std::sqrt(b.flexural_rigidity / b.linear_density) *
                            ms.root() * ms.root() / (b.length * b.length);
    CHECK(ms.natural_frequency() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(ms.natural_frequency() == doctest::Approx(5.5116231886151503).epsilon(1e-12));
}

TEST_CASE("dimensionless parameter groups") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    CHECK(c.lam1 == doctest::Approx(0.5 / 0.54).epsilon(1e-14));
    CHECK(c.lam2 == doctest::Approx(0.05 / 0.54).epsilon(1e-14));
    CHECK(c.lam3 == doctest::Approx(0.005 / (0.27 * 8.0)).epsilon(1e-14));
    CHECK(c.lam4 == doctest::Approx(0.27 * 10.0 * 8.0 / 14.58).epsilon(1e-14));
    CHECK(c.lam5 == 0.0);
    CHECK(c.lam6 == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(c.hub_mass_ratio() == doctest::Approx(2.0 * c.lam3 / 0.0025).epsilon(1e-12));
}

TEST_CASE("shape constants match the published two-digit table within 5%") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    const struct { double got, ref; } rows[] = {
        {c.phil, -1.78}, {c.c1l, 1.85},  {c.c2, 9.66},   {c.c3, 13.23},
        {c.c4, 0.61},    {c.c5, -0.68},  {c.c6, 0.71},   {c.c7, 0.93},
        {c.c8, 0.77},    {c.c9, -1.00},  {c.c10, -1.48},
    };
    for (const auto& r : rows)
        CHECK(std::abs(r.got - r.ref) <= 0.05 * std::abs(r.ref));
}

TEST_CASE("shape constants (regression)") {
    const ModelCoefficients c = compute_coefficients(reference_beam());
    CHECK(c.c2 == doctest::Approx(9.661620803677).epsilon(1e-9));
    CHECK(c.c3 == doctest::Approx(13.238959665891).epsilon(1e-9));
    CHECK(c.c4 == doctest::Approx(0.614300897197).epsilon(1e-9));
    CHECK(c.c5 == doctest::Approx(-0.688869796937).epsilon(1e-9));
    CHECK(c.c6 == doctest::Approx(0.713465682824).epsilon(1e-9));
    CHECK(c.c7 == doctest::Approx(0.937346053934).epsilon(1e-9));
    CHECK(c.c8 == doctest::Approx(0.779776737064).epsilon(1e-9));
    CHECK(c.c9 == doctest::Approx(-1.003491682283).epsilon(1e-9));
    CHECK(c.c10 == doctest::Approx(-1.483559956946).epsilon(1e-9));
    CHECK(c.c11 == doctest::Approx(4.688101833199).epsilon(1e-9));
    CHECK(c.c12 == doctest::Approx(0.998776143654).epsilon(1e-9));
}

TEST_CASE("linear kind zeroes exactly the large-deformation constants") {
    BeamConfig b = reference_beam();
    const ModelCoefficients full = compute_coefficients(b);
    b.model_kind = ModelKind::linear;
    const ModelCoefficients lin = compute_coefficients(b);
    CHECK(lin.c3 == 0.0);
    CHECK(lin.c6 == 0.0);
    CHECK(lin.c7 == 0.0);
    CHECK(lin.c10 == 0.0);
    CHECK(lin.c1l == 0.0);
    CHECK(lin.c2 == full.c2);
    CHECK(lin.c4 == full.c4);
    CHECK(lin.c5 == full.c5);
    CHECK(lin.c8 == full.c8);
    CHECK(lin.c9 == full.c9);
    CHECK(lin.phil == full.phil);
}

TEST_CASE("invalid beam parameters are rejected") {
    BeamConfig b = reference_beam();
    b.length = 0.0;
    CHECK_THROWS_AS(b.validate(), ValidationError);
    b = reference_beam();
    b.flexural_rigidity = -1.0;
    CHECK_THROWS_AS(b.validate(), ValidationError);
    b = reference_beam();
    b.hub_radius = 0.0; // gravity term divides by the hub radius
    CHECK_THROWS_AS(b.validate(), ValidationError);
}
