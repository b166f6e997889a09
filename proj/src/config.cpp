#include "flexarm/config.hpp"

#include "flexarm/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace flexarm {

void TaskConfig::validate() const {
    if (!(travel_time > 0.0)) throw ValidationError("task.travel_time_s must be > 0");
    for (double v : {theta_i, theta_f, x_i, x_f, y_i, y_f}) {
        if (!std::isfinite(v)) throw ValidationError("task: endpoints must be finite");
    }
}

SwarmConfig PsoSettings::swarm() const {
    SwarmConfig cfg = (preset == "paper") ? paper_preset_swarm() : SwarmConfig{};
    if (preset != "paper" && preset != "canonical")
        throw ValidationError("pso.preset must be 'canonical' or 'paper'");
    cfg.particles = particles;
    cfg.max_iters = iters;
    if (c1 > 0.0) cfg.c1 = c1;
    if (c2 > 0.0) cfg.c2 = c2;
    if (chi > 0.0) cfg.chi = chi;
    if (inertia > 0.0) cfg.inertia = inertia;
    cfg.seed = seed;
    cfg.convergence_window = convergence_window;
    cfg.convergence_rel_tol = convergence_rel_tol;
    cfg.checkpoint_every = checkpoint_every;
    cfg.parallel = parallel;
    return cfg;
}

void AnnSettings::validate() const {
    if (hidden < 2) throw ValidationError("ann.hidden must be >= 2");
    if (!(steepness_min > 0.0) || !(steepness_max > steepness_min))
        throw ValidationError("ann: steepness bounds must satisfy 0 < min < max");
    if (!(weight_max > weight_min)) throw ValidationError("ann: weight bounds must satisfy min < max");
}

void SplineSettings::validate() const {
    if (knots < 1) throw ValidationError("spline.knots must be >= 1");
    if (!(margin >= 0.0)) throw ValidationError("spline.margin must be >= 0");
}

void SmcSettings::validate() const {
    gains.validate();
    if (d_coupling < 0.0) throw ValidationError("smc.d_coupling must be >= 0");
}

void UncertaintySettings::validate() const {
    if (epsilon < 0.0 || epsilon > 0.2)
        throw ValidationError("uncertainty.epsilon must lie in [0, 0.2]");
    if (!(omega >= 0.0)) throw ValidationError("uncertainty.omega_rad_s must be >= 0");
}

void RunConfig::validate() const {
    beam.validate();
    task.validate();
    sim.validate();
    pso.swarm().validate(false);
    ann.validate();
    spline.validate();
    smc.validate();
    uncertainty.validate();
}

namespace {

struct RawConfig {
    // section -> key -> value, with consumption tracking for unknown-key errors
    std::map<std::string, std::map<std::string, std::string>> data;
    std::set<std::string> consumed;

    const std::string* find(const std::string& section, const std::string& key) {
        auto s = data.find(section);
        if (s == data.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        consumed.insert(section + "." + key);
        return &k->second;
    }
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

RawConfig parse_raw(std::istream& is, const std::string& origin) {
    RawConfig raw;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw IoError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw IoError(origin + ":" + std::to_string(lineno) + ": empty section name");
            raw.data[section]; // a section may legitimately be empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        if (section.empty())
            throw IoError(origin + ":" + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty())
            throw IoError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!raw.data[section].emplace(key, value).second)
            throw IoError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                          section + "." + key + "'");
    }
    return raw;
}

double to_double(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(where + ": expected a number, got '" + s + "'");
    }
}

long to_long(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(where + ": expected an integer, got '" + s + "'");
    }
}

bool to_bool(const std::string& s, const std::string& where) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ValidationError(where + ": expected a boolean, got '" + s + "'");
}

struct Fetch {
    RawConfig& raw;
    std::string section;

    void number(const std::string& key, double& dst) {
        if (const auto* v = raw.find(section, key)) dst = to_double(*v, section + "." + key);
    }
    void angle(const std::string& key, double& dst) {
        const auto* rad = raw.find(section, key);
        const auto* deg = raw.find(section, key + "_deg");
        if (rad && deg)
            throw ValidationError(section + "." + key + ": give radians or degrees, not both");
        if (rad) dst = to_double(*rad, section + "." + key);
        if (deg) dst = to_double(*deg, section + "." + key + "_deg") * M_PI / 180.0;
    }
    void integer(const std::string& key, int& dst) {
        if (const auto* v = raw.find(section, key))
            dst = static_cast<int>(to_long(*v, section + "." + key));
    }
    void uinteger(const std::string& key, std::uint64_t& dst) {
        if (const auto* v = raw.find(section, key)) {
            const long x = to_long(*v, section + "." + key);
            if (x < 0) throw ValidationError(section + "." + key + ": must be >= 0");
            dst = static_cast<std::uint64_t>(x);
        }
    }
    void boolean(const std::string& key, bool& dst) {
        if (const auto* v = raw.find(section, key)) dst = to_bool(*v, section + "." + key);
    }
    void text(const std::string& key, std::string& dst) {
        if (const auto* v = raw.find(section, key)) dst = *v;
    }
};

} // namespace

RunConfig parse_config(std::istream& is, const std::string& origin) {
    RawConfig raw = parse_raw(is, origin);
    RunConfig cfg;

    {
        Fetch f{raw, "beam"};
        if (!raw.find("beam", "length_m"))
            throw ValidationError("beam.length_m is required");
        cfg.beam.length = to_double(raw.data["beam"]["length_m"], "beam.length_m");
        f.number("flexural_rigidity_nm2", cfg.beam.flexural_rigidity);
        f.number("linear_density_kg_m", cfg.beam.linear_density);
        f.number("tip_mass_kg", cfg.beam.tip_mass);
        f.number("slider_mass_kg", cfg.beam.slider_mass);
        f.number("hub_inertia_kgm2", cfg.beam.hub_inertia);
        f.number("hub_radius_m", cfg.beam.hub_radius);
        f.number("gravity_m_s2", cfg.beam.gravity);
        f.number("slenderness", cfg.beam.slenderness);
        f.number("tip_deflection_limit", cfg.beam.tip_deflection_limit);
        std::string model = to_string(cfg.beam.model_kind);
        f.text("model", model);
        if (model == "linear") cfg.beam.model_kind = ModelKind::linear;
        else if (model == "nonlinear") cfg.beam.model_kind = ModelKind::nonlinear;
        else throw ValidationError("beam.model must be 'nonlinear' or 'linear'");
    }
    {
        Fetch f{raw, "task"};
        f.angle("theta_i", cfg.task.theta_i);
        f.angle("theta_f", cfg.task.theta_f);
        f.number("x_i", cfg.task.x_i);
        f.number("x_f", cfg.task.x_f);
        f.number("y_i", cfg.task.y_i);
        f.number("y_f", cfg.task.y_f);
        f.number("travel_time_s", cfg.task.travel_time);
    }
    {
        Fetch f{raw, "sim"};
        f.number("rel_tol", cfg.sim.rel_tol);
        f.number("abs_tol", cfg.sim.abs_tol);
        f.number("max_step", cfg.sim.max_step);
        f.number("horizon", cfg.sim.horizon);
        f.number("sample_period", cfg.sim.sample_period);
        f.number("modal_damping", cfg.sim.modal_damping);
    }
    {
        Fetch f{raw, "pso"};
        f.text("preset", cfg.pso.preset);
        f.integer("particles", cfg.pso.particles);
        f.integer("iters", cfg.pso.iters);
        f.number("c1", cfg.pso.c1);
        f.number("c2", cfg.pso.c2);
        f.number("chi", cfg.pso.chi);
        f.number("inertia", cfg.pso.inertia);
        f.uinteger("seed", cfg.pso.seed);
        f.integer("convergence_window", cfg.pso.convergence_window);
        f.number("convergence_rel_tol", cfg.pso.convergence_rel_tol);
        f.integer("checkpoint_every", cfg.pso.checkpoint_every);
        f.boolean("parallel", cfg.pso.parallel);
    }
    {
        Fetch f{raw, "ann"};
        f.integer("hidden", cfg.ann.hidden);
        f.number("steepness_min", cfg.ann.steepness_min);
        f.number("steepness_max", cfg.ann.steepness_max);
        f.number("weight_min", cfg.ann.weight_min);
        f.number("weight_max", cfg.ann.weight_max);
    }
    {
        Fetch f{raw, "spline"};
        f.integer("knots", cfg.spline.knots);
        f.number("margin", cfg.spline.margin);
    }
    {
        Fetch f{raw, "smc"};
        f.number("k1", cfg.smc.gains.K(0));
        f.number("k2", cfg.smc.gains.K(1));
        f.number("k3", cfg.smc.gains.K(2));
        f.number("gamma1", cfg.smc.gains.Gamma(0));
        f.number("gamma2", cfg.smc.gains.Gamma(1));
        f.number("gamma3", cfg.smc.gains.Gamma(2));
        f.number("gamma4", cfg.smc.gains.gamma4);
        f.number("psi1", cfg.smc.gains.psi(0));
        f.number("psi2", cfg.smc.gains.psi(1));
        f.number("psi3", cfg.smc.gains.psi(2));
        f.number("eta", cfg.smc.eta);
        f.number("d_coupling", cfg.smc.d_coupling);
        f.boolean("compensate_elastic_accel", cfg.smc.gains.compensate_elastic_accel);
        f.boolean("decoupled_synthesis", cfg.smc.decoupled_synthesis);
    }
    {
        Fetch f{raw, "uncertainty"};
        f.number("epsilon", cfg.uncertainty.epsilon);
        f.number("omega_rad_s", cfg.uncertainty.omega);
    }

    for (const auto& [section, keys] : raw.data) {
        static const std::set<std::string> known_sections = {
            "beam", "task", "sim", "pso", "ann", "spline", "smc", "uncertainty"};
        if (!known_sections.count(section))
            throw ValidationError(origin + ": unknown section [" + section + "]");
        for (const auto& [key, value] : keys) {
            if (!raw.consumed.count(section + "." + key))
                throw ValidationError(origin + ": unknown key '" + section + "." + key + "'");
        }
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path);
    return parse_config(is, path);
}

} // namespace flexarm
