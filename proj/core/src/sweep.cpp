#include "upb/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace upb {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string to_string(Route r) {
    switch (r) {
        case Route::Master: return "master";
        case Route::Semiclassical: return "semiclassical";
        case Route::WeakDrive: return "weakdrive";
    }
    return "?";
}

Route route_from_string(const std::string& s) {
    if (s == "master") return Route::Master;
    if (s == "semiclassical") return Route::Semiclassical;
    if (s == "weakdrive") return Route::WeakDrive;
    throw ConfigError("unknown route '" + s + "' (expected master|semiclassical|weakdrive)");
}

DriveDirection direction_from_string(const std::string& s) {
    if (s == "ccw-drive" || s == "from-left") return DriveDirection::FromLeft;
    if (s == "cw-drive" || s == "from-right") return DriveDirection::FromRight;
    throw ConfigError("unknown direction '" + s + "' (expected ccw-drive|cw-drive)");
}

std::string to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::DeltaOverKappa: return "delta_over_kappa";
        case SweepVariable::OmegaSpin: return "omega_spin_rad_s";
        case SweepVariable::GOverKappa: return "g_over_kappa";
        case SweepVariable::JOverKappa: return "j_over_kappa";
        case SweepVariable::Temperature: return "temperature_k";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "delta_over_kappa") return SweepVariable::DeltaOverKappa;
    if (s == "omega_spin_rad_s") return SweepVariable::OmegaSpin;
    if (s == "g_over_kappa") return SweepVariable::GOverKappa;
    if (s == "j_over_kappa") return SweepVariable::JOverKappa;
    if (s == "temperature_k") return SweepVariable::Temperature;
    throw ConfigError("unknown sweep variable '" + s + "'");
}

void SweepSpec::validate() const {
    if (!(step > 0)) throw ConfigError("sweep step must be positive");
    if (!(start < stop)) throw ConfigError("sweep start must be below stop");
    if (routes.empty()) throw ConfigError("at least one route is required");
    if (directions.empty()) throw ConfigError("at least one drive direction is required");
    if (truncation.size() != 3) throw ConfigError("truncation must list three mode dimensions");
    physical.validate();
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g;
    int n = int(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) g.push_back(start + i * step);
    return g;
}

namespace {

ReducedParams reduced_at(const SweepSpec& spec, double value, DriveDirection dir) {
    PhysicalParams p = spec.physical;
    DimensionlessOverrides ov = spec.overrides;
    p.direction = dir;
    switch (spec.variable) {
        case SweepVariable::DeltaOverKappa: ov.delta_over_kappa = value; break;
        case SweepVariable::OmegaSpin: p.omega_spin = value; break;
        case SweepVariable::GOverKappa: ov.g_over_kappa = value; break;
        case SweepVariable::JOverKappa: ov.j_over_kappa = value; break;
        case SweepVariable::Temperature: p.temperature = value; break;
    }
    return reduce(p, ov);
}

double eval_route(Route route, const ReducedParams& rp, const SweepSpec& spec) {
    switch (route) {
        case Route::Master: return solve_point(rp, spec.truncation).g2_L;
        case Route::Semiclassical: return g2_semiclassical(rp, spec.r3_form);
        case Route::WeakDrive: return g2_weakdrive(rp);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    auto t0 = std::chrono::steady_clock::now();

    SweepResult res;
    res.grid = spec.grid();
    res.truncation = spec.truncation;
    res.tool_version = "upbsim 1.0.0";

    // deterministic task layout: (grid index, direction, route)
    for (double v : res.grid)
        for (DriveDirection d : spec.directions)
            for (Route r : spec.routes) {
                PointOutcome p;
                p.grid_value = v;
                p.route = r;
                p.direction = d;
                res.points.push_back(p);
            }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= res.points.size()) return;
            PointOutcome& p = res.points[i];
            try {
                ReducedParams rp = reduced_at(spec, p.grid_value, p.direction);
                p.g2 = eval_route(p.route, rp, spec);
                p.status = "ok";
            } catch (const std::exception& e) {
                p.status = std::string("error: ") + e.what();
            }
        }
    };

    int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& p : res.points)
        (p.status == "ok" ? res.ok_count : res.error_count)++;

    ReducedParams rp0 = reduced_at(spec, res.grid.empty() ? spec.start : res.grid.front(),
                                   spec.directions.front());
    res.parameters = {{"kappa_rad_s", rp0.kappa_L},
                      {"j_over_kappa", rp0.J / rp0.kappa_L},
                      {"g_over_kappa", rp0.g / rp0.kappa_L},
                      {"omega_m_over_kappa", rp0.omega_m / rp0.kappa_L},
                      {"gamma_m_over_kappa", rp0.gamma_m / rp0.kappa_L},
                      {"drive_over_kappa", rp0.eps_d / rp0.kappa_L},
                      {"temperature_k", rp0.temperature},
                      {"delta_f_over_kappa", std::abs(rp0.Delta_F) / rp0.kappa_L}};
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

TempScanResult run_temperature_scan(SweepSpec spec) {
    spec.variable = SweepVariable::Temperature;
    spec.routes = {Route::Master};
    spec.directions = {DriveDirection::FromLeft, DriveDirection::FromRight};
    if (!spec.overrides.delta_over_kappa || !spec.overrides.g_over_kappa) {
        // pin (Delta, g) at the weak-drive optimum of the ccw-driven system
        PhysicalParams p = spec.physical;
        p.direction = DriveDirection::FromLeft;
        ReducedParams rp = reduce(p, spec.overrides);
        OptimalResult opt = optimal_params(rp);
        spec.overrides.delta_over_kappa = opt.Delta_opt / rp.kappa_L;
        spec.overrides.g_over_kappa = opt.g_opt / rp.kappa_L;
    }
    TempScanResult out;
    out.sweep = run_sweep(spec);

    for (size_t i = 0; i < out.sweep.grid.size(); ++i) {
        const PointOutcome& a = out.sweep.points[2 * i];
        const PointOutcome& b = out.sweep.points[2 * i + 1];
        if (a.status != "ok" || b.status != "ok") continue;
        double lo = std::min(a.g2, b.g2), hi = std::max(a.g2, b.g2);
        if (lo <= 0) continue;
        if (hi / lo < 2.0) {
            out.crossing_temperature = out.sweep.grid[i];
            break;
        }
    }
    return out;
}

std::string emit_csv(const SweepResult& r) {
    std::string s = "grid,route,direction,g2,status\n";
    for (const auto& p : r.points) {
        s += fmt_double(p.grid_value);
        s += ',';
        s += to_string(p.route);
        s += ',';
        s += to_string(p.direction);
        s += ',';
        s += fmt_double(p.g2);
        s += ',';
        std::string st = p.status;
        for (char& c : st)
            if (c == ',' || c == '\n') c = ';';
        s += st;
        s += '\n';
    }
    return s;
}

std::string emit_json(const SweepResult& r) {
    json j;
    j["tool_version"] = r.tool_version;
    j["truncation"] = r.truncation;
    j["wall_time_s"] = r.wall_time_s;
    j["parameters"] = r.parameters;
    j["ok_count"] = r.ok_count;
    j["error_count"] = r.error_count;
    j["grid"] = r.grid;
    json pts = json::array();
    for (const auto& p : r.points)
        pts.push_back({{"grid", p.grid_value},
                       {"route", to_string(p.route)},
                       {"direction", to_string(p.direction)},
                       {"g2", std::isfinite(p.g2) ? json(p.g2) : json(nullptr)},
                       {"status", p.status}});
    j["points"] = pts;
    return j.dump(2) + "\n";
}

SweepResult sweep_result_from_json(const std::string& text) {
    json j = json::parse(text);
    SweepResult r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.truncation = j.at("truncation").get<std::vector<int>>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.parameters = j.at("parameters").get<std::map<std::string, double>>();
    r.ok_count = j.at("ok_count").get<int>();
    r.error_count = j.at("error_count").get<int>();
    r.grid = j.at("grid").get<std::vector<double>>();
    for (const auto& e : j.at("points")) {
        PointOutcome p;
        p.grid_value = e.at("grid").get<double>();
        p.route = route_from_string(e.at("route").get<std::string>());
        p.direction = direction_from_string(e.at("direction").get<std::string>());
        p.g2 = e.at("g2").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                    : e.at("g2").get<double>();
        p.status = e.at("status").get<std::string>();
        r.points.push_back(p);
    }
    return r;
}

std::string emit_svg(const SweepResult& r, bool log_y) {
    const int W = 720, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
    const double y_lo = 1e-6, y_hi = 1e4;
    double x_lo = r.grid.empty() ? 0 : r.grid.front();
    double x_hi = r.grid.empty() ? 1 : r.grid.back();
    if (x_hi <= x_lo) x_hi = x_lo + 1;

    auto xmap = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (W - ml - mr); };
    auto ymap = [&](double g2) {
        double v = std::min(std::max(g2, y_lo), y_hi);
        double t = log_y ? (std::log10(v) - std::log10(y_lo)) / (std::log10(y_hi) - std::log10(y_lo))
                         : (v - y_lo) / (y_hi - y_lo);
        return H - mb - t * (H - mt - mb);
    };

    const char* colors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    if (log_y)
        for (int e = -6; e <= 4; e += 2) {
            double y = ymap(std::pow(10.0, e));
            s << "<text x=\"8\" y=\"" << y + 4 << "\" font-size=\"11\">1e" << e << "</text>\n";
            s << "<line x1=\"" << ml - 4 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
              << "\" stroke=\"black\"/>\n";
        }
    s << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12 << "\" font-size=\"12\">" << "grid"
      << "</text>\n<text x=\"12\" y=\"14\" font-size=\"12\">g2(0)"
      << (log_y ? " [log]" : "") << "</text>\n";

    // one polyline per (route, direction) series
    std::vector<std::pair<Route, DriveDirection>> series;
    for (const auto& p : r.points) {
        std::pair<Route, DriveDirection> key{p.route, p.direction};
        bool seen = false;
        for (auto& k : series) seen = seen || k == key;
        if (!seen) series.push_back(key);
    }
    int ci = 0;
    for (auto& key : series) {
        std::ostringstream poly;
        for (const auto& p : r.points)
            if (p.route == key.first && p.direction == key.second && p.status == "ok" &&
                std::isfinite(p.g2))
                poly << xmap(p.grid_value) << "," << ymap(p.g2) << " ";
        const char* col = colors[ci % 6];
        s << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\""
          << poly.str() << "\"/>\n";
        s << "<text x=\"" << W - mr - 190 << "\" y=\"" << mt + 16 * (ci + 1)
          << "\" font-size=\"11\" fill=\"" << col << "\">" << to_string(key.first) << " / "
          << to_string(key.second) << "</text>\n";
        ++ci;
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace upb
