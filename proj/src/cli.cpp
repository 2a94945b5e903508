#include "vswt/cli.hpp"

#include "vswt/curves.hpp"
#include "vswt/engine.hpp"
#include "vswt/errors.hpp"
#include "vswt/io.hpp"
#include "vswt/params.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace vswt::cli {

namespace {

/// Bad command-line values detected after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> range_list(double lo, double hi, double step) {
    return curves::make_grid(lo, hi, step);
}

struct Common {
    std::string config_path;
    std::string out_path;
    bool plot_script = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_plot = true) {
    cmd->add_option("--config", c.config_path, "Parameter file (key = value); defaults to $VSWT_CONFIG");
    cmd->add_option("--out", c.out_path, "Output CSV path; stdout when omitted");
    if (with_plot) {
        cmd->add_flag("--plot-script", c.plot_script, "Also write a gnuplot script to <out>.gp");
    }
}

Config load_config_file(const std::string& explicit_path) {
    std::string path = explicit_path;
    if (path.empty()) {
        if (const char* env = std::getenv("VSWT_CONFIG"); env != nullptr && *env != '\0') {
            path = env;
        }
    }
    if (path.empty()) {
        return Config{};
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError(0, "", "cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return load_config(buf.str());
}

void require_increasing(const std::vector<double>& v, const char* flag) {
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (!(v[k] > v[k - 1])) {
            throw UsageError(std::string(flag) + " values must be strictly increasing");
        }
    }
}

io::Metadata param_metadata(const TurbineParams& p) {
    io::Metadata meta;
    std::istringstream lines(serialize(p));
    std::string line;
    while (std::getline(lines, line)) {
        const auto eq = line.find(" = ");
        meta.emplace_back("param " + line.substr(0, eq), line.substr(eq + 3));
    }
    return meta;
}

void emit(const Common& c, const std::string& csv, io::PlotKind kind, const std::vector<std::string>& columns,
          std::ostream& out) {
    if (c.plot_script && c.out_path.empty()) {
        throw UsageError("--plot-script needs --out");
    }
    if (c.out_path.empty()) {
        out << csv;
        return;
    }
    std::string script;
    if (c.plot_script) {
        script = io::emit_plot_script(c.out_path, kind, columns);
    }
    io::write_file(c.out_path, csv);
    if (c.plot_script) {
        io::write_file(c.out_path + ".gp", script);
    }
}

std::vector<std::string> table_columns(const curves::CurveTable& t) {
    std::vector<std::string> cols = {t.abscissa_label};
    for (const auto& s : t.series) {
        cols.push_back(s.label);
    }
    return cols;
}

void emit_table(const Common& c, const curves::CurveTable& t, io::PlotKind kind, const TurbineParams& p,
                std::ostream& out) {
    std::ostringstream csv;
    io::write_csv(t, csv, param_metadata(p));
    emit(c, csv.str(), kind, table_columns(t), out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variable-speed wind turbine static curves and closed-loop simulation", "vswt"};
    app.require_subcommand(1);

    // curves
    auto* curves_cmd = app.add_subcommand("curves", "Static characteristic curves");
    curves_cmd->require_subcommand(1);
    unsigned jobs = 1;

    Common cpvw_c;
    std::vector<double> cpvw_betas = range_list(0, 27, 3);
    double vmin = 4.0;
    double vmax = 25.0;
    double vstep = 0.1;
    double omega_fixed = 1.2;
    auto* cpvw = curves_cmd->add_subcommand("cp-vw", "Cp versus wind speed at fixed rotor speed, one series per beta");
    add_common(cpvw, cpvw_c);
    cpvw->add_option("--betas", cpvw_betas, "Pitch angles, deg")->delimiter(',')->capture_default_str();
    cpvw->add_option("--vmin", vmin, "Lowest wind speed, m/s")->capture_default_str();
    cpvw->add_option("--vmax", vmax, "Highest wind speed, m/s")->capture_default_str();
    cpvw->add_option("--step", vstep, "Wind speed step, m/s")->capture_default_str();
    cpvw->add_option("--omega", omega_fixed, "Rotor speed, pu")->capture_default_str();
    cpvw->add_option("--jobs", jobs, "Worker threads over family members")->capture_default_str();

    Common cpl_c;
    std::vector<double> cpl_betas = range_list(0, 27, 3);
    double lmin = 2.0;
    double lmax = 13.0;
    double lstep = 0.01;
    auto* cpl = curves_cmd->add_subcommand("cp-lambda", "Cp versus tip speed ratio, one series per beta");
    add_common(cpl, cpl_c);
    cpl->add_option("--betas", cpl_betas, "Pitch angles, deg")->delimiter(',')->capture_default_str();
    cpl->add_option("--lmin", lmin, "Lowest tip speed ratio")->capture_default_str();
    cpl->add_option("--lmax", lmax, "Highest tip speed ratio")->capture_default_str();
    cpl->add_option("--step", lstep, "Tip speed ratio step")->capture_default_str();
    cpl->add_option("--jobs", jobs, "Worker threads over family members")->capture_default_str();

    Common pmo_c;
    std::string pmo_mode = "wind";
    double pmo_beta = 0.0;
    std::vector<double> pmo_winds = range_list(4, 12, 1);
    double pmo_wind = 12.0;
    std::vector<double> pmo_betas = {0, 5, 10, 15, 19};
    double omin = 0.0;
    double omax = 1.2;
    double ostep = 0.01;
    auto* pmo = curves_cmd->add_subcommand("pmech-omega", "Mechanical power versus rotor speed");
    add_common(pmo, pmo_c);
    pmo->add_option("--mode", pmo_mode, "wind: fixed beta, one series per wind speed; beta: fixed wind, one series per beta")
        ->check(CLI::IsMember({"wind", "beta"}))
        ->capture_default_str();
    pmo->add_option("--beta", pmo_beta, "Pitch angle for --mode wind, deg")->capture_default_str();
    pmo->add_option("--winds", pmo_winds, "Wind speeds for --mode wind, m/s")->delimiter(',')->capture_default_str();
    pmo->add_option("--wind", pmo_wind, "Wind speed for --mode beta, m/s")->capture_default_str();
    pmo->add_option("--betas", pmo_betas, "Pitch angles for --mode beta, deg")->delimiter(',')->capture_default_str();
    pmo->add_option("--omin", omin, "Lowest rotor speed, pu")->capture_default_str();
    pmo->add_option("--omax", omax, "Highest rotor speed, pu")->capture_default_str();
    pmo->add_option("--step", ostep, "Rotor speed step, pu")->capture_default_str();
    pmo->add_option("--jobs", jobs, "Worker threads over family members")->capture_default_str();

    // optimum
    Common opt_c;
    std::vector<double> opt_betas = range_list(0, 27, 3);
    double opt_lmin = 2.0;
    double opt_lmax = 13.0;
    double opt_step = 0.01;
    auto* opt = app.add_subcommand("optimum", "Optimum tip speed ratio and Cp per pitch angle");
    add_common(opt, opt_c, false);
    opt->add_option("--betas", opt_betas, "Pitch angles, deg")->delimiter(',')->capture_default_str();
    opt->add_option("--lmin", opt_lmin, "Search interval start")->capture_default_str();
    opt->add_option("--lmax", opt_lmax, "Search interval end")->capture_default_str();
    opt->add_option("--grid-step", opt_step, "Coarse grid step before refinement")->capture_default_str();

    // simulate
    Common sim_c;
    std::optional<std::string> sim_model;
    std::optional<double> sim_duration;
    std::optional<double> sim_dt;
    std::optional<double> sim_interval;
    std::optional<std::string> sim_profile;
    std::optional<std::string> sim_integrator;
    auto* sim = app.add_subcommand("simulate", "Closed-loop time-domain simulation");
    add_common(sim, sim_c);
    sim->add_option("--model", sim_model, "one-mass or two-mass (overrides config)")
        ->check(CLI::IsMember({"one-mass", "two-mass"}));
    sim->add_option("--duration", sim_duration, "Simulated time, s");
    sim->add_option("--dt", sim_dt, "Integration step, s");
    sim->add_option("--output-interval", sim_interval, "Sample spacing, s; 0 records every step");
    sim->add_option("--wind-profile", sim_profile, "Breakpoints 't0:v0,t1:v1,...' (s:m/s)");
    sim->add_option("--integrator", sim_integrator, "rk4 or euler")->check(CLI::IsMember({"rk4", "euler"}));

    // validate-config
    std::string val_path;
    auto* val = app.add_subcommand("validate-config", "Check a parameter file and print the resolved parameters");
    val->add_option("--config", val_path, "Parameter file; defaults to $VSWT_CONFIG");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        // Help of the deepest subcommand that was recognised.
        const CLI::App* ctx = &app;
        for (auto* sub = ctx->get_subcommands().empty() ? nullptr : ctx->get_subcommands().front(); sub != nullptr;
             sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front()) {
            ctx = sub;
        }
        err << ctx->help();
        return kExitUsage;
    }

    try {
        if (*cpvw) {
            const auto cfg = load_config_file(cpvw_c.config_path);
            require_increasing(cpvw_betas, "--betas");
            emit_table(cpvw_c, curves::sweep_cp_vs_wind(cpvw_betas, vmin, vmax, vstep, omega_fixed, cfg.params, jobs),
                       io::PlotKind::cp_vw, cfg.params, out);
        } else if (*cpl) {
            const auto cfg = load_config_file(cpl_c.config_path);
            require_increasing(cpl_betas, "--betas");
            emit_table(cpl_c, curves::sweep_cp_vs_lambda(cpl_betas, lmin, lmax, lstep, cfg.params, jobs),
                       io::PlotKind::cp_lambda, cfg.params, out);
        } else if (*pmo) {
            const auto cfg = load_config_file(pmo_c.config_path);
            curves::PmechMode mode;
            if (pmo_mode == "wind") {
                require_increasing(pmo_winds, "--winds");
                mode = curves::WindSweep{pmo_beta, pmo_winds};
            } else {
                require_increasing(pmo_betas, "--betas");
                mode = curves::BetaSweep{pmo_wind, pmo_betas};
            }
            emit_table(pmo_c, curves::sweep_pmech_vs_omega(mode, omin, omax, ostep, cfg.params, jobs),
                       io::PlotKind::pmech_omega, cfg.params, out);
        } else if (*opt) {
            const auto cfg = load_config_file(opt_c.config_path);
            require_increasing(opt_betas, "--betas");
            curves::CurveTable t;
            t.abscissa_label = "beta";
            t.abscissa = opt_betas;
            t.series = {{"lambda_opt", {}}, {"cp_opt", {}}};
            for (const double b : opt_betas) {
                const auto o = curves::find_optimum(b, cfg.params, opt_lmin, opt_lmax, opt_step);
                t.series[0].values.push_back(o.lambda);
                t.series[1].values.push_back(o.cp);
            }
            t.metadata = {{"curve", "optimum"}, {"lambda_min", io::format_value(opt_lmin)},
                          {"lambda_max", io::format_value(opt_lmax)}, {"grid_step", io::format_value(opt_step)}};
            emit_table(opt_c, t, io::PlotKind::cp_lambda, cfg.params, out);
        } else if (*sim) {
            auto cfg = load_config_file(sim_c.config_path);
            auto& sc = cfg.scenario;
            if (sim_model) {
                sc.model = *sim_model == "two-mass" ? MechanicalModel::two_mass : MechanicalModel::one_mass;
            }
            if (sim_duration) {
                sc.duration = *sim_duration;
            }
            if (sim_dt) {
                sc.dt = *sim_dt;
            }
            if (sim_interval) {
                sc.output_interval = *sim_interval;
            }
            if (sim_profile) {
                sc.wind_profile = parse_wind_profile(*sim_profile);
            }
            if (sim_integrator) {
                sc.integrator = *sim_integrator == "euler" ? Integrator::euler : Integrator::rk4;
            }
            if (auto v = validate(sc); !v.empty()) {
                throw ValidationError(std::move(v));
            }
            const auto traj = engine::simulate(sc, cfg.params);
            io::Metadata meta = {
                {"duration", io::format_value(sc.duration)},
                {"dt", io::format_value(sc.dt)},
                {"integrator", std::string(to_string(sc.integrator))},
                {"wind_profile", format_wind_profile(sc.wind_profile)},
            };
            const auto pm = param_metadata(cfg.params);
            meta.insert(meta.end(), pm.begin(), pm.end());
            std::ostringstream csv;
            io::write_csv(traj, csv, meta);
            std::vector<std::string> cols;
            for (const auto& [name, _] : traj.columns()) {
                cols.emplace_back(name);
            }
            emit(sim_c, csv.str(), io::PlotKind::trajectory, cols, out);
        } else if (*val) {
            const auto cfg = load_config_file(val_path);
            out << serialize(cfg);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const io::IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace vswt::cli
