#include "upb/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace upb {

namespace {

using nlohmann::json;

double get_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

}  // namespace

SweepSpec parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    SweepSpec spec;
    if (j.contains("physical")) {
        const json& p = j.at("physical");
        PhysicalParams& ph = spec.physical;
        ph.wavelength = get_num(p, "wavelength_m", ph.wavelength);
        ph.Q_L = get_num(p, "q_factor_left", ph.Q_L);
        ph.Q_R = get_num(p, "q_factor_right", ph.Q_R);
        ph.Q_M = get_num(p, "q_factor_mech", ph.Q_M);
        ph.radius = get_num(p, "radius_m", ph.radius);
        ph.refractive_index = get_num(p, "refractive_index", ph.refractive_index);
        ph.dn_dlambda = get_num(p, "dn_dlambda_per_m", ph.dn_dlambda);
        ph.mass = get_num(p, "mass_kg", ph.mass);
        ph.input_power = get_num(p, "input_power_w", ph.input_power);
        ph.temperature = get_num(p, "temperature_k", ph.temperature);
        bool has_hz = p.contains("omega_spin_hz"), has_rad = p.contains("omega_spin_rad_s");
        if (has_hz && has_rad)
            throw ConfigError("give exactly one of omega_spin_hz / omega_spin_rad_s");
        if (has_hz) ph.omega_spin = 2.0 * M_PI * get_num(p, "omega_spin_hz", 0.0);
        if (has_rad) ph.omega_spin = get_num(p, "omega_spin_rad_s", 0.0);
        if (p.contains("drive_direction"))
            ph.direction = direction_from_string(p.at("drive_direction").get<std::string>());
        for (auto it = p.begin(); it != p.end(); ++it) {
            static const std::vector<std::string> known = {
                "wavelength_m",   "q_factor_left",   "q_factor_right", "q_factor_mech",
                "radius_m",       "refractive_index", "dn_dlambda_per_m", "mass_kg",
                "input_power_w",  "temperature_k",   "omega_spin_hz",  "omega_spin_rad_s",
                "drive_direction"};
            bool ok = false;
            for (const auto& k : known) ok = ok || k == it.key();
            if (!ok)
                throw ConfigError("unknown physical key '" + it.key() +
                                  "' (unit-suffixed keys required, e.g. omega_spin_hz)");
        }
    }
    if (j.contains("overrides")) {
        const json& o = j.at("overrides");
        auto opt = [&](const char* k) -> std::optional<double> {
            if (!o.contains(k)) return std::nullopt;
            return o.at(k).get<double>();
        };
        spec.overrides.g_over_kappa = opt("g_over_kappa");
        spec.overrides.omega_m_over_kappa = opt("omega_m_over_kappa");
        spec.overrides.j_over_kappa = opt("j_over_kappa");
        spec.overrides.drive_over_kappa = opt("drive_over_kappa");
        spec.overrides.delta_over_kappa = opt("delta_over_kappa");
        spec.overrides.gamma_m_over_kappa = opt("gamma_m_over_kappa");
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        if (s.contains("variable"))
            spec.variable = sweep_variable_from_string(s.at("variable").get<std::string>());
        spec.start = get_num(s, "start", spec.start);
        spec.stop = get_num(s, "stop", spec.stop);
        spec.step = get_num(s, "step", spec.step);
    }
    if (j.contains("routes")) {
        spec.routes.clear();
        for (const auto& r : j.at("routes"))
            spec.routes.push_back(route_from_string(r.get<std::string>()));
    }
    if (j.contains("directions")) {
        spec.directions.clear();
        for (const auto& d : j.at("directions"))
            spec.directions.push_back(direction_from_string(d.get<std::string>()));
    }
    if (j.contains("truncation"))
        spec.truncation = j.at("truncation").get<std::vector<int>>();
    if (j.contains("r3_form")) {
        std::string f = j.at("r3_form").get<std::string>();
        if (f == "wick")
            spec.r3_form = R3Form::Wick;
        else if (f == "literal")
            spec.r3_form = R3Form::Literal;
        else
            throw ConfigError("r3_form must be 'wick' or 'literal'");
    }
    if (j.contains("jobs")) spec.jobs = j.at("jobs").get<int>();
    return spec;
}

SweepSpec load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace upb
