#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flexarm/errors.hpp"
#include "flexarm/pso.hpp"

#include <cmath>
#include <limits>

using namespace flexarm;

namespace {

Fitness sphere(const std::vector<double>& center) {
    return [center](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
        return s;
    };
}

SwarmConfig box(int dim, double lo, double hi) {
    SwarmConfig cfg;
    cfg.lower.assign(dim, lo);
    cfg.upper.assign(dim, hi);
    return cfg;
}

} // namespace

TEST_CASE("constriction factor matches the closed form") {
    // chi = 2 / |2 - phi - sqrt(phi^2 - 4 phi)| with phi = c1 + c2
    CHECK(constriction_factor(2.05, 2.05) == doctest::Approx(0.7298437881).epsilon(1e-9));
    CHECK(constriction_factor(1.0, 3.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(constriction_factor(2.0, 2.0), ValidationError);
    CHECK_THROWS_AS(constriction_factor(1.0, 2.0), ValidationError);
}

TEST_CASE("minimizes a ten-dimensional sphere to high accuracy") {
    SwarmConfig cfg = box(10, -5.0, 5.0);
    cfg.max_iters = 200;
    cfg.seed = 7;
    cfg.convergence_window = 200; // run the full budget
    const std::vector<double> center(10, 0.7);
    const SwarmResult r = optimize(sphere(center), cfg);
    CHECK(r.best_cost < 1e-6);
    for (int i = 0; i < 10; ++i) CHECK(r.best[i] == doctest::Approx(0.7).epsilon(1e-2));
}

TEST_CASE("the recorded history never increases") {
    SwarmConfig cfg = box(4, -2.0, 2.0);
    cfg.seed = 3;
    const SwarmResult r = optimize(sphere({0.1, -0.3, 0.9, 0.0}), cfg);
    REQUIRE(!r.history.empty());
    for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] <= r.history[i - 1]);
    CHECK(r.history.back() == doctest::Approx(r.best_cost).epsilon(1e-15));
}

TEST_CASE("a fixed seed reproduces the run exactly") {
    SwarmConfig cfg = box(5, -3.0, 3.0);
    cfg.seed = 42;
    const SwarmResult a = optimize(sphere({1.0, -1.0, 0.5, 0.0, 2.0}), cfg);
    const SwarmResult b = optimize(sphere({1.0, -1.0, 0.5, 0.0, 2.0}), cfg);
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.history == b.history);
    CHECK(a.best == b.best);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("parallel evaluation matches the serial run bit for bit") {
    SwarmConfig serial = box(5, -3.0, 3.0);
    serial.seed = 11;
    SwarmConfig parallel = serial;
    parallel.parallel = true;
    const Fitness f = sphere({0.3, 0.3, 0.3, 0.3, 0.3});
    const SwarmResult a = optimize(f, serial);
    const SwarmResult b = optimize(f, parallel);
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.history == b.history);
    CHECK(a.best == b.best);
}

TEST_CASE("an optimum outside the box is clipped to the boundary") {
    SwarmConfig cfg = box(3, -1.0, 1.0);
    cfg.seed = 5;
    cfg.max_iters = 150;
    cfg.convergence_window = 150;
    const SwarmResult r = optimize(sphere({4.0, 0.0, -4.0}), cfg);
    CHECK(r.best[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.best[1] == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(r.best[2] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("non-finite fitness draws are resampled and counted") {
    SwarmConfig cfg = box(2, -2.0, 2.0);
    cfg.seed = 9;
    cfg.max_iters = 30;
    // sphere with a poisoned half plane
    const Fitness f = [](const std::vector<double>& x) {
        if (x[0] > 0.5) return std::numeric_limits<double>::quiet_NaN();
        return x[0] * x[0] + x[1] * x[1];
    };
    const SwarmResult r = optimize(f, cfg);
    CHECK(r.resampled > 0);
    CHECK(std::isfinite(r.best_cost));
    CHECK(r.best[0] <= 0.5);
}

TEST_CASE("an everywhere-infeasible fitness is an error") {
    SwarmConfig cfg = box(2, -1.0, 1.0);
    cfg.seed = 1;
    const Fitness f = [](const std::vector<double>&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    CHECK_THROWS_AS(optimize(f, cfg), NumericalError);
}

TEST_CASE("the improvement window stops a converged swarm early") {
    SwarmConfig cfg = box(2, -1.0, 1.0);
    cfg.seed = 13;
    cfg.max_iters = 500;
    cfg.convergence_window = 10;
    cfg.convergence_rel_tol = 1e-6;
    const SwarmResult r = optimize(sphere({0.2, -0.2}), cfg);
    CHECK(r.converged);
    CHECK(r.iterations < 500);
}

TEST_CASE("evaluation accounting covers every fitness call") {
    SwarmConfig cfg = box(3, -1.0, 1.0);
    cfg.seed = 2;
    cfg.max_iters = 25;
    cfg.convergence_window = 25;
    long calls = 0;
    const Fitness base = sphere({0.0, 0.0, 0.0});
    const Fitness counted = [&](const std::vector<double>& x) {
        ++calls;
        return base(x);
    };
    const SwarmResult r = optimize(counted, cfg);
    CHECK(r.evaluations == calls);
    CHECK(r.iterations == 25);
    CHECK(r.evaluations >= long(cfg.particles) * long(cfg.max_iters + 1));
}

TEST_CASE("checkpoints fire on the configured cadence") {
    SwarmConfig cfg = box(2, -1.0, 1.0);
    cfg.seed = 4;
    cfg.max_iters = 40;
    cfg.convergence_window = 40;
    cfg.checkpoint_every = 10;
    std::vector<int> iters;
    optimize(sphere({0.1, 0.1}), cfg, [&](int iter, const SwarmResult&) {
        iters.push_back(iter);
    });
    REQUIRE(!iters.empty());
    for (int it : iters) CHECK(it % 10 == 0);
}

TEST_CASE("the inertia-weight preset optimizes too") {
    SwarmConfig cfg = paper_preset_swarm();
    cfg.lower.assign(4, -2.0);
    cfg.upper.assign(4, 2.0);
    cfg.seed = 21;
    cfg.max_iters = 150;
    cfg.convergence_window = 150;
    REQUIRE(cfg.update == PsoUpdate::InertiaWeight);
    const SwarmResult r = optimize(sphere({0.4, -0.4, 0.4, -0.4}), cfg);
    CHECK(r.best_cost < 1e-3);
}

TEST_CASE("invalid swarm settings are rejected") {
    SwarmConfig cfg = box(2, -1.0, 1.0);
    cfg.particles = 1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = box(2, -1.0, 1.0);
    cfg.max_iters = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = box(2, -1.0, 1.0);
    cfg.c1 = 1.0;
    cfg.c2 = 1.0; // constriction needs c1 + c2 > 4
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = box(2, -1.0, 1.0);
    cfg.update = PsoUpdate::InertiaWeight; // needs an explicit chi
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = box(2, 1.0, -1.0); // inverted bounds
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
