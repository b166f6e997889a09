#include "flexarm/plan.hpp"

#include "flexarm/errors.hpp"

#include <algorithm>
#include <cmath>

namespace flexarm {

void PlanSpec::validate() const {
    if (family != "cycloid" && family != "spline" && family != "ann")
        throw ValidationError("plan: family must be cycloid, spline or ann");
    if (coordinate != "theta" && coordinate != "x" && coordinate != "y" && coordinate != "all")
        throw ValidationError("plan: coordinate must be theta, x, y or all");
    if (!(tf > 0.0)) throw ValidationError("plan: travel time must be > 0");
    ann.validate();
    spline.validate();
}

std::vector<int> PlanSpec::optimized_coordinates() const {
    if (family == "cycloid") return {};
    if (coordinate == "all") return {0, 1, 2};
    if (coordinate == "theta") return {0};
    if (coordinate == "x") return {1};
    return {2};
}

namespace {

int params_per_coordinate(const PlanSpec& s) {
    if (s.family == "spline") return s.spline.knots;
    if (s.family == "ann") return 2 * s.ann.hidden - 1;
    return 0;
}

} // namespace

int PlanSpec::dimensions() const {
    return params_per_coordinate(*this) * static_cast<int>(optimized_coordinates().size());
}

void PlanSpec::bounds(std::vector<double>& lo, std::vector<double>& hi) const {
    lo.clear();
    hi.clear();
    for (int c : optimized_coordinates()) {
        const double ri = endpoints[c][0], rf = endpoints[c][1];
        if (family == "spline") {
            const double span = std::max(std::abs(rf - ri), 1.0);
            const double lo_v = std::min(ri, rf) - spline.margin * span;
            const double hi_v = std::max(ri, rf) + spline.margin * span;
            for (int k = 0; k < spline.knots; ++k) {
                lo.push_back(lo_v);
                hi.push_back(hi_v);
            }
        } else { // ann
            for (int k = 0; k < ann.hidden; ++k) {
                lo.push_back(ann.steepness_min);
                hi.push_back(ann.steepness_max);
            }
            for (int k = 0; k < ann.hidden - 1; ++k) {
                lo.push_back(ann.weight_min);
                hi.push_back(ann.weight_max);
            }
        }
    }
}

RigidTrajectory PlanSpec::build(const std::vector<double>& params) const {
    if (static_cast<int>(params.size()) != dimensions())
        throw ValidationError("plan: parameter vector has the wrong dimension");
    RigidTrajectory traj;
    traj.tf = tf;
    for (int c = 0; c < 3; ++c)
        traj.comp[c] = Cycloid(endpoints[c][0], endpoints[c][1], tf);

    const int per = params_per_coordinate(*this);
    int offset = 0;
    for (int c : optimized_coordinates()) {
        const double ri = endpoints[c][0], rf = endpoints[c][1];
        const auto first = params.begin() + offset;
        if (family == "spline") {
            traj.comp[c] = KnotSpline(ri, rf, tf, std::vector<double>(first, first + per));
        } else {
            std::vector<double> a(first, first + ann.hidden);
            std::vector<double> w(first + ann.hidden, first + per);
            traj.comp[c] = AnnPath(ri, rf, tf, a, w);
        }
        offset += per;
    }
    return traj;
}

PlanSpec make_plan_spec(const std::string& family, const std::string& coordinate,
                        const TaskConfig& task, double time_scale,
                        const AnnSettings& ann, const SplineSettings& spline) {
    PlanSpec s;
    s.family = family;
    s.coordinate = coordinate;
    s.tf = task.travel_time / time_scale;
    s.endpoints[0][0] = task.theta_i;
    s.endpoints[0][1] = task.theta_f;
    s.endpoints[1][0] = task.x_i;
    s.endpoints[1][1] = task.x_f;
    s.endpoints[2][0] = task.y_i;
    s.endpoints[2][1] = task.y_f;
    s.ann = ann;
    s.spline = spline;
    s.validate();
    return s;
}

PlanResult plan_trajectory(const PlanSpec& spec, const ModelCoefficients& coeffs,
                           const SimConfig& inner, SwarmConfig swarm,
                           const CheckpointFn& checkpoint) {
    spec.validate();
    PlanResult out;
    if (spec.family == "cycloid") {
        out.traj = spec.build({});
        out.cost = evaluate_cost(out.traj, coeffs, inner);
        return out;
    }
    spec.bounds(swarm.lower, swarm.upper);
    Fitness fitness = [&](const std::vector<double>& params) {
        return evaluate_cost(spec.build(params), coeffs, inner);
    };
    out.swarm = optimize(fitness, swarm, checkpoint);
    out.traj = spec.build(out.swarm.best);
    out.cost = out.swarm.best_cost;
    return out;
}

} // namespace flexarm
