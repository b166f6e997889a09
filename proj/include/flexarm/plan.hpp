#pragma once

#include "flexarm/config.hpp"
#include "flexarm/pso.hpp"
#include "flexarm/sim.hpp"
#include "flexarm/trajectory.hpp"

#include <string>
#include <vector>

namespace flexarm {

// Search problem: which trajectory family parameterizes which rigid
// coordinates. Non-optimized coordinates follow cycloids. Travel time and
// endpoints are dimensionless here (tf = T_f / time scale).
struct PlanSpec {
    std::string family = "ann";      // cycloid | spline | ann
    std::string coordinate = "theta"; // theta | x | y | all
    double endpoints[3][2] = {{0, 0}, {0, 0}, {0, 0}}; // (R_i, R_f) per coordinate
    double tf = 1.0;
    AnnSettings ann;
    SplineSettings spline;

    void validate() const;
    std::vector<int> optimized_coordinates() const;
    int dimensions() const; // 0 for the cycloid family
    void bounds(std::vector<double>& lo, std::vector<double>& hi) const;
    RigidTrajectory build(const std::vector<double>& params) const;
};

PlanSpec make_plan_spec(const std::string& family, const std::string& coordinate,
                        const TaskConfig& task, double time_scale,
                        const AnnSettings& ann, const SplineSettings& spline);

struct PlanResult {
    RigidTrajectory traj;
    double cost = 0.0;
    SwarmResult swarm; // empty history for the cycloid family
};

// Minimizes the residual-vibration cost over the family parameters with PSO
// (bounds are filled from the spec; cfg.lower/upper are ignored).
PlanResult plan_trajectory(const PlanSpec& spec, const ModelCoefficients& coeffs,
                           const SimConfig& inner, SwarmConfig swarm,
                           const CheckpointFn& checkpoint = {});

} // namespace flexarm
