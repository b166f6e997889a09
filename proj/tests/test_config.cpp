#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flexarm/config.hpp"
#include "flexarm/errors.hpp"

#include <cmath>
#include <sstream>

using namespace flexarm;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is, "<test>");
}

} // namespace

TEST_CASE("a minimal config keeps the documented defaults") {
    const RunConfig rc = parse("[beam]\nlength_m = 2.0\n");
    CHECK(rc.beam.length == 2.0);
    CHECK(rc.beam.flexural_rigidity == doctest::Approx(14.58));
    CHECK(rc.beam.linear_density == doctest::Approx(0.27));
    CHECK(rc.beam.slenderness == doctest::Approx(100.0));
    CHECK(rc.task.theta_i == doctest::Approx(-M_PI / 2.0));
    CHECK(rc.task.travel_time == doctest::Approx(2.0));
    CHECK(rc.sim.rel_tol == doctest::Approx(1e-8));
    CHECK(rc.pso.particles == 30);
    CHECK(rc.pso.iters == 70);
    CHECK(rc.ann.hidden == 5);
    CHECK(rc.spline.knots == 5);
    CHECK(rc.smc.d_coupling == doctest::Approx(0.1));
    CHECK(rc.uncertainty.omega == doctest::Approx(20.0));
}

TEST_CASE("all sections parse and land in the right fields") {
    const RunConfig rc = parse(
        "[beam]\n"
        "length_m = 1.5\n"
        "flexural_rigidity_nm2 = 10.0\n"
        "linear_density_kg_m = 0.3\n"
        "tip_mass_kg = 0.02\n"
        "slider_mass_kg = 0.4\n"
        "hub_inertia_kgm2 = 4e-3\n"
        "hub_radius_m = 0.08\n"
        "gravity_m_s2 = 9.81\n"
        "slenderness = 0.0\n"
        "model = linear\n"
        "[task]\n"
        "theta_i = 0.0\n"
        "theta_f = 1.0\n"
        "x_f = 0.5\n"
        "travel_time_s = 3.0\n"
        "[sim]\n"
        "rel_tol = 1e-6\n"
        "horizon = 8.0\n"
        "modal_damping = 0.01\n"
        "[pso]\n"
        "preset = paper\n"
        "particles = 20\n"
        "iters = 50\n"
        "seed = 17\n"
        "parallel = true\n"
        "[ann]\n"
        "hidden = 7\n"
        "steepness_max = 6.0\n"
        "[spline]\n"
        "knots = 4\n"
        "margin = 0.3\n"
        "[smc]\n"
        "k1 = 4.0\n"
        "gamma1 = 0.2\n"
        "psi2 = 12.0\n"
        "compensate_elastic_accel = true\n"
        "d_coupling = 0.05\n"
        "[uncertainty]\n"
        "epsilon = 0.1\n"
        "omega_rad_s = 15.0\n");
    CHECK(rc.beam.length == 1.5);
    CHECK(rc.beam.gravity == doctest::Approx(9.81));
    CHECK(rc.beam.model_kind == ModelKind::linear);
    CHECK(rc.task.theta_f == 1.0);
    CHECK(rc.task.x_f == 0.5);
    CHECK(rc.task.travel_time == 3.0);
    CHECK(rc.sim.rel_tol == 1e-6);
    CHECK(rc.sim.modal_damping == 0.01);
    CHECK(rc.pso.preset == "paper");
    CHECK(rc.pso.particles == 20);
    CHECK(rc.pso.seed == 17);
    CHECK(rc.pso.parallel);
    CHECK(rc.ann.hidden == 7);
    CHECK(rc.ann.steepness_max == 6.0);
    CHECK(rc.spline.knots == 4);
    CHECK(rc.smc.gains.K(0) == 4.0);
    CHECK(rc.smc.gains.Gamma(0) == doctest::Approx(0.2));
    CHECK(rc.smc.gains.psi(1) == 12.0);
    CHECK(rc.smc.gains.compensate_elastic_accel);
    CHECK(rc.smc.d_coupling == 0.05);
    CHECK(rc.uncertainty.epsilon == 0.1);
    CHECK(rc.uncertainty.omega == 15.0);
}

TEST_CASE("degree keys convert to radians") {
    const RunConfig rc = parse(
        "[beam]\nlength_m = 2.0\n[task]\ntheta_i_deg = -90.0\ntheta_f_deg = 45.0\n");
    CHECK(rc.task.theta_i == doctest::Approx(-M_PI / 2.0).epsilon(1e-14));
    CHECK(rc.task.theta_f == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
}

TEST_CASE("giving both the radian and degree key is an error") {
    CHECK_THROWS_AS(
        parse("[beam]\nlength_m = 2.0\n[task]\ntheta_i = 0.0\ntheta_i_deg = 0.0\n"),
        ValidationError);
}

TEST_CASE("the beam length is required") {
    CHECK_THROWS_WITH_AS(parse("[task]\ntheta_f = 0.0\n"),
                         doctest::Contains("beam.length_m"), ValidationError);
}

TEST_CASE("physical values are validated") {
    CHECK_THROWS_AS(parse("[beam]\nlength_m = 2.0\nflexural_rigidity_nm2 = -1.0\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse("[beam]\nlength_m = -2.0\n"), ValidationError);
    CHECK_THROWS_AS(parse("[beam]\nlength_m = 2.0\n[sim]\nrel_tol = 0.0\n"),
                    ValidationError);
}

TEST_CASE("unknown sections and keys are rejected by name") {
    CHECK_THROWS_WITH_AS(parse("[beam]\nlength_m = 2.0\n[warp]\nfactor = 9\n"),
                         doctest::Contains("warp"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("[beam]\nlength_m = 2.0\ncolour = red\n"),
                         doctest::Contains("colour"), ValidationError);
}

TEST_CASE("duplicate keys are an input error") {
    CHECK_THROWS_AS(parse("[beam]\nlength_m = 2.0\nlength_m = 3.0\n"), IoError);
}

TEST_CASE("malformed numbers and booleans are rejected") {
    CHECK_THROWS_AS(parse("[beam]\nlength_m = two\n"), ValidationError);
    CHECK_THROWS_AS(parse("[beam]\nlength_m = 2.0\n[pso]\nparallel = maybe\n"),
                    ValidationError);
}

TEST_CASE("comments, blank lines and quoted strings are handled") {
    const RunConfig rc = parse(
        "# leading comment\n"
        "\n"
        "[beam]\n"
        "length_m = 2.0   # trailing comment\n"
        "; semicolon comment\n"
        "[pso]\n"
        "preset = \"paper\"\n");
    CHECK(rc.beam.length == 2.0);
    CHECK(rc.pso.preset == "paper");
}

TEST_CASE("the shipped reference config loads and round-trips its key values") {
    const RunConfig rc = load_config("configs/paper.toml");
    CHECK(rc.beam.length == 2.0);
    CHECK(rc.beam.slenderness == 0.0);
    CHECK(rc.task.theta_i == doctest::Approx(-M_PI / 2.0));
    CHECK(rc.task.x_f == 1.0);
    CHECK(rc.pso.particles == 30);
    CHECK(rc.pso.iters == 70);
    CHECK(rc.pso.seed == 1);
    CHECK(rc.smc.gains.K(0) == 5.0);
    CHECK(rc.smc.gains.gamma4 == 2.0);
    CHECK(rc.smc.gains.compensate_elastic_accel);
    rc.validate();
}

TEST_CASE("missing files raise an io error") {
    CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), IoError);
}

TEST_CASE("swarm settings translate to a pso configuration") {
    const RunConfig rc = parse(
        "[beam]\nlength_m = 2.0\n[pso]\npreset = paper\nparticles = 12\nseed = 3\n");
    const SwarmConfig sc = rc.pso.swarm();
    CHECK(sc.particles == 12);
    CHECK(sc.seed == 3);
    CHECK(sc.update == PsoUpdate::InertiaWeight);
    CHECK(sc.chi > 0.0);
    const RunConfig rc2 = parse("[beam]\nlength_m = 2.0\n");
    CHECK(rc2.pso.swarm().update == PsoUpdate::Constriction);
}
