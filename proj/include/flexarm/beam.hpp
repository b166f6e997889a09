#pragma once

#include "flexarm/errors.hpp"

#include <cmath>
#include <string>

namespace flexarm {

enum class ModelKind { nonlinear, linear };

// Physical parameters of the arm, hub, slider and tip mass.
struct BeamConfig {
    double length = 2.0;             // l  [m]
    double flexural_rigidity = 14.58; // EI [N m^2]
    double linear_density = 0.27;    // rho [kg/m]
    double tip_mass = 0.05;          // m  [kg]
    double slider_mass = 0.5;        // M  [kg]
    double hub_inertia = 5e-3;       // J  [kg m^2]
    double hub_radius = 0.1;         // R_H [m]
    double gravity = 10.0;           // g  [m/s^2]
    double slenderness = 100.0;      // lambda5 = l / sqrt(I/A)
    double tip_deflection_limit = 0.45; // |q~| beyond which the model is untrusted
    ModelKind model_kind = ModelKind::nonlinear;

    // tip mass over beam mass, the alpha of the frequency equation
    double mass_ratio() const { return tip_mass / (linear_density * length); }

    // characteristic time sqrt(rho l^4 / EI); dimensionless time is t / time_scale()
    double time_scale() const {
        return std::sqrt(linear_density * std::pow(length, 4) / flexural_rigidity);
    }

    void validate() const {
        if (!(length > 0.0)) throw ValidationError("beam.length_m must be > 0");
        if (!(flexural_rigidity > 0.0)) throw ValidationError("beam.flexural_rigidity_nm2 must be > 0");
        if (!(linear_density > 0.0)) throw ValidationError("beam.linear_density_kg_m must be > 0");
        if (tip_mass < 0.0) throw ValidationError("beam.tip_mass_kg must be >= 0");
        if (slider_mass < 0.0) throw ValidationError("beam.slider_mass_kg must be >= 0");
        if (hub_inertia < 0.0) throw ValidationError("beam.hub_inertia_kgm2 must be >= 0");
        if (hub_radius < 0.0) throw ValidationError("beam.hub_radius_m must be >= 0");
        if (slenderness < 0.0) throw ValidationError("beam.slenderness must be >= 0");
        if (!(tip_deflection_limit > 0.0)) throw ValidationError("beam.tip_deflection_limit must be > 0");
        // the hub-mass gravity term divides by (R_H/l)^2
        if (gravity != 0.0 && hub_radius <= 0.0)
            throw ValidationError("beam.hub_radius_m must be > 0 when gravity is nonzero");
    }
};

inline std::string to_string(ModelKind k) {
    return k == ModelKind::linear ? "linear" : "nonlinear";
}

} // namespace flexarm
