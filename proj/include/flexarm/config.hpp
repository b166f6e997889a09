#pragma once

#include "flexarm/beam.hpp"
#include "flexarm/pso.hpp"
#include "flexarm/sim.hpp"
#include "flexarm/smc.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace flexarm {

// Rest-to-rest task in physical units; angles in radians (keys with a _deg
// suffix are converted on load), travel time in seconds.
struct TaskConfig {
    double theta_i = -M_PI / 2.0;
    double theta_f = 0.0;
    double x_i = 0.0, x_f = 1.0;
    double y_i = 0.0, y_f = 0.0;
    double travel_time = 2.0; // seconds

    void validate() const;
};

struct PsoSettings {
    std::string preset = "canonical"; // or "paper"
    int particles = 30;
    int iters = 70;
    double c1 = 0.0, c2 = 0.0;   // 0 = preset default
    double chi = 0.0, inertia = 0.0;
    std::uint64_t seed = 0;
    int convergence_window = 15;
    double convergence_rel_tol = 1e-8;
    int checkpoint_every = 10;
    bool parallel = false;

    SwarmConfig swarm() const; // bounds left empty
};

struct AnnSettings {
    int hidden = 5;
    double steepness_min = 0.5, steepness_max = 8.0;
    double weight_min = -0.5, weight_max = 1.5;

    void validate() const;
};

struct SplineSettings {
    int knots = 5;
    double margin = 0.5; // knot search box extends this far beyond [R_i, R_f]

    void validate() const;
};

struct SmcSettings {
    SmcGains gains;                 // A left zero; synthesized per run
    double eta = -1.0;              // drift bound; < 0 = estimate from a 10% sweep
    double d_coupling = 0.1;        // D = d * ones
    bool decoupled_synthesis = false;

    void validate() const;
};

struct UncertaintySettings {
    double epsilon = 0.0;
    double omega = 20.0; // rad/s, applied to physical time

    void validate() const;
};

struct RunConfig {
    BeamConfig beam;
    TaskConfig task;
    SimConfig sim;
    PsoSettings pso;
    AnnSettings ann;
    SplineSettings spline;
    SmcSettings smc;
    UncertaintySettings uncertainty;

    void validate() const;
};

// Sectioned key-value text: `[section]` headers, `key = value` lines,
// `#`/`;` comments. Unknown sections or keys are errors. Angle keys accept a
// `_deg` variant. Grammar is documented in the README.
RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& is, const std::string& origin = "<stream>");

} // namespace flexarm
