#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "upb/config.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> routes;
    std::vector<std::string> directions;
    std::string out_path;
    std::string format = "csv";
    std::vector<int> truncation;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required = true) {
    auto* c = cmd->add_option("--config", o.config_path, "JSON parameter file");
    if (config_required) c->required();
    cmd->add_option("--route", o.routes, "master|semiclassical|weakdrive (repeatable)")
        ->delimiter(',');
    cmd->add_option("--direction", o.directions, "ccw-drive|cw-drive (repeatable)")
        ->delimiter(',');
    cmd->add_option("--out", o.out_path, "output file (stdout when omitted)");
    cmd->add_option("--format", o.format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_option("--truncation", o.truncation, "per-mode Fock dimensions, e.g. 4,4,5")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--jobs", o.jobs, "parallel workers");
}

upb::SweepSpec build_spec(const CommonOpts& o) {
    upb::SweepSpec spec = upb::load_config_file(o.config_path);
    if (!o.routes.empty()) {
        spec.routes.clear();
        for (const auto& r : o.routes) spec.routes.push_back(upb::route_from_string(r));
    }
    if (!o.directions.empty()) {
        spec.directions.clear();
        for (const auto& d : o.directions)
            spec.directions.push_back(upb::direction_from_string(d));
    }
    if (!o.truncation.empty()) spec.truncation = o.truncation;
    if (o.jobs > 0) spec.jobs = o.jobs;
    return spec;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw upb::ConfigError("cannot write output file: " + path);
    out << text;
}

std::string render(const upb::SweepResult& res, const std::string& format) {
    if (format == "json") return upb::emit_json(res);
    if (format == "svg") return upb::emit_svg(res);
    return upb::emit_csv(res);
}

int finish_sweep(const upb::SweepResult& res, const CommonOpts& o) {
    write_output(render(res, o.format), o.out_path);
    if (res.ok_count == 0) {
        std::cerr << "every grid point failed numerically\n";
        return kExitNumerical;
    }
    return kExitOk;
}

std::vector<fs::path> preset_dirs(const char* argv0) {
    std::vector<fs::path> dirs;
    std::error_code ec;
    fs::path exe = fs::weakly_canonical(fs::path(argv0), ec);
    if (!ec && exe.has_parent_path()) {
        dirs.push_back(exe.parent_path() / "presets");
        dirs.push_back(exe.parent_path() / ".." / "share" / "upbsim" / "presets");
    }
    if (const char* env = std::getenv("UPBSIM_PRESET_DIR")) dirs.emplace_back(env);
    return dirs;
}

int cmd_optimal(const CommonOpts& o) {
    upb::SweepSpec spec = build_spec(o);
    std::ostringstream out;
    for (upb::DriveDirection dir : spec.directions) {
        upb::PhysicalParams p = spec.physical;
        p.direction = dir;
        upb::ReducedParams rp = upb::reduce(p, spec.overrides);
        upb::OptimalResult r = upb::optimal_params(rp);
        double k = rp.kappa_L;
        out << "# direction " << upb::to_string(dir) << "\n";
        out << "delta_opt_over_kappa," << r.Delta_opt / k << "\n";
        out << "g_opt_over_kappa," << r.g_opt / k << "\n";
        out << "g2_at_opt," << r.g2_at_opt << "\n";
        out << "c20_over_c10sq," << r.c20_over_c10sq << "\n";
        out << "local_min_confirmed," << (r.local_min_confirmed ? "yes" : "no") << "\n";
        out << "closed_form_delta_opt_over_kappa," << r.closed_form.Delta_opt / k << "\n";
        out << "closed_form_g_opt_over_kappa,"
            << (r.closed_form.g_opt_valid ? std::to_string(r.closed_form.g_opt / k)
                                          : std::string("invalid-radicand"))
            << "\n";
        out << "closed_form_quartic_residual," << r.closed_form.quartic_residual << "\n";
        out << "closed_form_branch_ambiguous,"
            << (r.closed_form.aux.branch_ambiguous ? "yes" : "no") << "\n";

        out << "grid,route,direction,g2,status\n";
        for (int i = -20; i <= 20; ++i) {
            double D = r.Delta_opt / k + 0.005 * i;
            upb::ReducedParams rpD = rp;
            rpD.g = r.g_opt;
            rpD.delta = r.g_opt * r.g_opt / rp.omega_m;
            rpD = rpD.with_Delta(D * k);
            std::string status = "ok";
            double g2 = std::numeric_limits<double>::quiet_NaN();
            try {
                g2 = upb::g2_weakdrive(rpD);
            } catch (const std::exception& e) {
                status = std::string("error: ") + e.what();
            }
            out << D << ",weakdrive," << upb::to_string(dir) << "," << g2 << "," << status
                << "\n";
        }
    }
    write_output(out.str(), o.out_path);
    return kExitOk;
}

int cmd_tempscan(const CommonOpts& o) {
    upb::SweepSpec spec = build_spec(o);
    // pin (Delta, g) at the weak-drive optimum for the configured spin rate
    upb::PhysicalParams p = spec.physical;
    p.direction = upb::DriveDirection::FromLeft;
    upb::ReducedParams rp = upb::reduce(p, spec.overrides);
    upb::OptimalResult opt = upb::optimal_params(rp);
    double k = rp.kappa_L;
    spec.overrides.delta_over_kappa = opt.Delta_opt / k;
    spec.overrides.g_over_kappa = opt.g_opt / k;
    if (spec.variable != upb::SweepVariable::Temperature) {
        spec.variable = upb::SweepVariable::Temperature;
        spec.start = 1e-4;
        spec.stop = 1e-2;
        spec.step = 2.5e-4;
    }
    upb::TempScanResult r = upb::run_temperature_scan(spec);
    std::string text = render(r.sweep, o.format);
    if (o.format == "csv") {
        std::ostringstream head;
        head << "# delta_opt_over_kappa=" << opt.Delta_opt / k
             << " g_opt_over_kappa=" << opt.g_opt / k << " crossing_temperature_k="
             << r.crossing_temperature << "\n";
        text = head.str() + text;
    }
    write_output(text, o.out_path);
    return r.sweep.ok_count == 0 ? kExitNumerical : kExitOk;
}

int cmd_point(const CommonOpts& o) {
    upb::SweepSpec spec = build_spec(o);
    if (!spec.overrides.delta_over_kappa)
        throw upb::ConfigError("point evaluation needs overrides.delta_over_kappa");
    double D = *spec.overrides.delta_over_kappa;
    spec.variable = upb::SweepVariable::DeltaOverKappa;
    spec.start = D;
    spec.stop = D + 1.0;
    spec.step = 2.0;  // single-point grid
    upb::SweepResult res = upb::run_sweep(spec);
    return finish_sweep(res, o);
}

int cmd_presets(const std::string& name, const char* argv0) {
    for (const fs::path& dir : preset_dirs(argv0)) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) continue;
        if (name.empty()) {
            for (const auto& e : fs::directory_iterator(dir))
                if (e.path().extension() == ".json")
                    std::cout << e.path().stem().string() << "\t" << e.path().string() << "\n";
            return kExitOk;
        }
        fs::path f = dir / (name + ".json");
        if (fs::exists(f)) {
            std::ifstream in(f);
            std::cout << in.rdbuf();
            return kExitOk;
        }
    }
    std::cerr << (name.empty() ? "no preset directory found"
                               : "preset not found: " + name)
              << "\n";
    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonreciprocal unconventional photon blockade simulator"};
    app.require_subcommand(1);

    CommonOpts sweep_o, optimal_o, temp_o, point_o;
    std::string preset_name;

    add_common(app.add_subcommand("sweep", "g2 parameter sweep across routes"), sweep_o);
    add_common(app.add_subcommand("optimal", "weak-drive optimal detuning and coupling"),
               optimal_o);
    add_common(app.add_subcommand("tempscan", "g2 vs temperature at the optimum"), temp_o);
    add_common(app.add_subcommand("point", "single-point g2 evaluation"), point_o);
    app.add_subcommand("presets", "list or print bundled parameter presets")
        ->add_option("name", preset_name, "preset to print (omit to list)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand("sweep")) return finish_sweep(upb::run_sweep(build_spec(sweep_o)), sweep_o);
        if (app.got_subcommand("optimal")) return cmd_optimal(optimal_o);
        if (app.got_subcommand("tempscan")) return cmd_tempscan(temp_o);
        if (app.got_subcommand("point")) return cmd_point(point_o);
        if (app.got_subcommand("presets")) return cmd_presets(preset_name, argv[0]);
    } catch (const upb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
