#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace flexarm {

enum class PsoUpdate { Constriction, InertiaWeight };

struct SwarmConfig {
    int particles = 30;
    int max_iters = 70;
    double c1 = 2.05;
    double c2 = 2.05;
    PsoUpdate update = PsoUpdate::Constriction;
    double chi = 0.0;      // 0 = derive from (c1, c2); must be > 0 for inertia variant
    double inertia = 0.0;  // used by the inertia variant only
    std::vector<double> lower, upper;
    std::uint64_t seed = 0;
    int convergence_window = 15;
    double convergence_rel_tol = 1e-8;
    int checkpoint_every = 10; // iterations; 0 disables
    bool parallel = false;

    // bounds are usually filled right before optimize(); pass false to
    // check everything else
    void validate(bool require_bounds = true) const;
};

// "paper" preset: inertia-weight update with the midpoints of the published
// ranges (omega 0.775, chi 0.875, c1 1.5, c2 2.0).
SwarmConfig paper_preset_swarm();

struct SwarmResult {
    std::vector<double> best;
    double best_cost = 0.0;
    std::vector<double> history; // global best after each iteration
    int iterations = 0;          // iterations actually run
    long evaluations = 0;
    long resampled = 0;          // non-finite fitness draws replaced
    bool converged = false;      // stopped on the improvement window
};

using Fitness = std::function<double(const std::vector<double>&)>;
using CheckpointFn = std::function<void(int iter, const SwarmResult& partial)>;

double constriction_factor(double c1, double c2);

// Global-best PSO on the box [lower, upper]. Deterministic for a fixed seed
// regardless of the parallel flag: all random numbers for an iteration are
// drawn sequentially before fitness fan-out.
SwarmResult optimize(const Fitness& fitness, const SwarmConfig& cfg,
                     const CheckpointFn& checkpoint = {});

} // namespace flexarm
