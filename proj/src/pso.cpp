#include "flexarm/pso.hpp"

#include "flexarm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace flexarm {

void SwarmConfig::validate(bool require_bounds) const {
    if (particles < 2) throw ValidationError("pso: at least two particles required");
    if (max_iters < 1) throw ValidationError("pso: iteration budget must be >= 1");
    if (require_bounds) {
        if (lower.empty() || lower.size() != upper.size())
            throw ValidationError("pso: bounds must be non-empty and of equal size");
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i]))
                throw ValidationError("pso: bounds must be finite with lower < upper");
        }
    }
    if (update == PsoUpdate::Constriction) {
        if (chi == 0.0 && !(c1 + c2 > 4.0))
            throw ValidationError("pso: constriction update needs c1 + c2 > 4");
    } else if (!(chi > 0.0)) {
        throw ValidationError("pso: inertia update needs an explicit chi > 0");
    }
    if (convergence_window < 1) throw ValidationError("pso: convergence window must be >= 1");
    if (!(convergence_rel_tol >= 0.0))
        throw ValidationError("pso: convergence tolerance must be >= 0");
}

SwarmConfig paper_preset_swarm() {
    SwarmConfig cfg;
    cfg.update = PsoUpdate::InertiaWeight;
    cfg.inertia = 0.775;
    cfg.chi = 0.875;
    cfg.c1 = 1.5;
    cfg.c2 = 2.0;
    return cfg;
}

double constriction_factor(double c1, double c2) {
    const double phi = c1 + c2;
    if (!(phi > 4.0)) throw ValidationError("pso: constriction factor requires c1 + c2 > 4");
    return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

namespace {

void parallel_for(int n, bool parallel, const std::function<void(int)>& body) {
    if (!parallel || n < 2) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    const int workers = std::min<int>(n, std::max(2u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

SwarmResult optimize(const Fitness& fitness, const SwarmConfig& cfg,
                     const CheckpointFn& checkpoint) {
    cfg.validate();
    const int dim = static_cast<int>(cfg.lower.size());
    const int n = cfg.particles;
    const double chi = (cfg.update == PsoUpdate::Constriction && cfg.chi == 0.0)
                           ? constriction_factor(cfg.c1, cfg.c2)
                           : cfg.chi;
    const double omega = cfg.update == PsoUpdate::InertiaWeight ? cfg.inertia : 1.0;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto sample_position = [&](std::vector<double>& x) {
        for (int d = 0; d < dim; ++d)
            x[d] = cfg.lower[d] + unit(rng) * (cfg.upper[d] - cfg.lower[d]);
    };

    std::vector<std::vector<double>> x(n, std::vector<double>(dim));
    std::vector<std::vector<double>> v(n, std::vector<double>(dim));
    std::vector<std::vector<double>> pbest(n);
    std::vector<double> pcost(n, std::numeric_limits<double>::infinity());
    std::vector<double> cost(n);

    for (int i = 0; i < n; ++i) {
        sample_position(x[i]);
        for (int d = 0; d < dim; ++d) {
            const double w = cfg.upper[d] - cfg.lower[d];
            v[i][d] = (unit(rng) - 0.5) * w;
        }
    }

    SwarmResult res;
    res.best_cost = std::numeric_limits<double>::infinity();

    auto evaluate_all = [&]() {
        parallel_for(n, cfg.parallel, [&](int i) { cost[i] = fitness(x[i]); });
        res.evaluations += n;
        // non-finite draws are replaced sequentially so the RNG stream stays
        // independent of evaluation order
        for (int i = 0; i < n; ++i) {
            int attempts = 0;
            while (!std::isfinite(cost[i]) && attempts < 100) {
                sample_position(x[i]);
                std::fill(v[i].begin(), v[i].end(), 0.0);
                cost[i] = fitness(x[i]);
                ++res.evaluations;
                ++res.resampled;
                ++attempts;
            }
            if (!std::isfinite(cost[i])) cost[i] = std::numeric_limits<double>::infinity();
        }
    };

    auto update_bests = [&]() {
        for (int i = 0; i < n; ++i) {
            if (pbest[i].empty() || cost[i] < pcost[i]) {
                pcost[i] = cost[i];
                pbest[i] = x[i];
            }
            if (res.best.empty() || pcost[i] < res.best_cost) { // ties keep the lowest index
                res.best_cost = pcost[i];
                res.best = pbest[i];
            }
        }
    };

    evaluate_all();
    update_bests();
    if (!std::isfinite(res.best_cost))
        throw NumericalError("pso: no feasible particle after initialization");

    std::vector<double> r1(dim), r2(dim);
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        for (int i = 0; i < n; ++i) {
            for (int d = 0; d < dim; ++d) {
                r1[d] = unit(rng);
                r2[d] = unit(rng);
            }
            for (int d = 0; d < dim; ++d) {
                v[i][d] = chi * (omega * v[i][d]
                                 + cfg.c1 * r1[d] * (pbest[i][d] - x[i][d])
                                 + cfg.c2 * r2[d] * (res.best[d] - x[i][d]));
                x[i][d] += v[i][d];
                if (x[i][d] < cfg.lower[d]) {
                    x[i][d] = cfg.lower[d];
                    v[i][d] = 0.0;
                } else if (x[i][d] > cfg.upper[d]) {
                    x[i][d] = cfg.upper[d];
                    v[i][d] = 0.0;
                }
            }
        }
        evaluate_all();
        update_bests();
        res.history.push_back(res.best_cost);
        res.iterations = iter;

        if (checkpoint && cfg.checkpoint_every > 0 && iter % cfg.checkpoint_every == 0)
            checkpoint(iter, res);

        const int w = cfg.convergence_window;
        if (static_cast<int>(res.history.size()) > w) {
            const double old = res.history[res.history.size() - 1 - w];
            const double now = res.best_cost;
            const double rel = (old - now) / std::max(std::abs(old), 1e-300);
            if (rel < cfg.convergence_rel_tol) {
                res.converged = true;
                break;
            }
        }
    }
    if (checkpoint && cfg.checkpoint_every > 0) checkpoint(res.iterations, res);
    return res;
}

} // namespace flexarm
