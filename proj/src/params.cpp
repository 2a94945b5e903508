#include "vswt/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace vswt {

CpCoefficients CpCoefficients::ge36() {
    CpCoefficients c;
    c.alpha = {{
        {-4.19e-1, 2.18e-1, -1.24e-2, -1.34e-4, 1.15e-5},
        {-6.76e-2, 6.04e-2, -1.39e-2, 1.07e-3, -2.39e-5},
        {1.57e-2, -1.10e-2, 2.15e-3, -1.49e-4, 2.79e-6},
        {-8.60e-4, 5.71e-4, -1.05e-4, 5.99e-6, -8.91e-8},
        {1.48e-5, -9.48e-6, 1.62e-6, -7.15e-8, 4.97e-10},
    }};
    return c;
}

CpCoefficients CpCoefficients::printed_paper_table() {
    CpCoefficients c = ge36();
    c.alpha[2][1] = -1.01e-2;
    return c;
}

std::string_view to_string(MechanicalModel m) {
    return m == MechanicalModel::one_mass ? "one-mass" : "two-mass";
}

std::string_view to_string(Integrator i) {
    return i == Integrator::rk4 ? "rk4" : "euler";
}

WindProfile WindProfile::constant(double v) {
    return WindProfile{{{0.0, v}}};
}

WindProfile WindProfile::ramp(double t0, double v0, double t1, double v1) {
    return WindProfile{{{t0, v0}, {t1, v1}}};
}

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + (key.empty() ? "" : ", key '" + key + "'") + ": " + what
                                  : (key.empty() ? what : "key '" + key + "': " + what)),
      line_(line),
      key_(std::move(key)) {}

namespace {

std::string join_violations(const std::vector<Violation>& v) {
    std::string out = "invalid parameters:";
    for (const auto& x : v) {
        out += "\n  " + x.field + ": " + x.rule;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::general);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct DoubleField {
    const char* name;
    double TurbineParams::*member;
};

// Serialization order.
constexpr DoubleField kDoubleFields[] = {
    {"s_base", &TurbineParams::s_base},
    {"k_rotor", &TurbineParams::k_rotor},
    {"k_tsr", &TurbineParams::k_tsr},
    {"v_cut_in", &TurbineParams::v_cut_in},
    {"v_cut_out", &TurbineParams::v_cut_out},
    {"omega_ref_max", &TurbineParams::omega_ref_max},
    {"p_ef_threshold", &TurbineParams::p_ef_threshold},
    {"kpp", &TurbineParams::kpp},
    {"kip", &TurbineParams::kip},
    {"kpc", &TurbineParams::kpc},
    {"kic", &TurbineParams::kic},
    {"t_pi", &TurbineParams::t_pi},
    {"beta_min", &TurbineParams::beta_min},
    {"beta_max", &TurbineParams::beta_max},
    {"dbeta_rate", &TurbineParams::dbeta_rate},
    {"kpt", &TurbineParams::kpt},
    {"kit", &TurbineParams::kit},
    {"t_con", &TurbineParams::t_con},
    {"t_f", &TurbineParams::t_f},
    {"t_pc", &TurbineParams::t_pc},
    {"pe_min", &TurbineParams::pe_min},
    {"pe_max", &TurbineParams::pe_max},
    {"dpe_rate", &TurbineParams::dpe_rate},
    {"p_max", &TurbineParams::p_max},
    {"v_wt", &TurbineParams::v_wt},
    {"h_wt_1m", &TurbineParams::h_wt_1m},
    {"h_wt_2m", &TurbineParams::h_wt_2m},
    {"h_g_2m", &TurbineParams::h_g_2m},
    {"d_shaft", &TurbineParams::d_shaft},
    {"k_shaft", &TurbineParams::k_shaft},
    {"omega0_2m", &TurbineParams::omega0_2m},
};

struct BoolField {
    const char* name;
    bool TurbineParams::*member;
};

constexpr BoolField kBoolFields[] = {
    {"pitch_servo_lag", &TurbineParams::pitch_servo_lag},
    {"comp_input_lag", &TurbineParams::comp_input_lag},
};

enum class Rule { finite, positive, non_negative };

struct FieldRule {
    const char* name;
    double TurbineParams::*member;
    Rule rule;
};

constexpr FieldRule kFieldRules[] = {
    {"s_base", &TurbineParams::s_base, Rule::positive},
    {"k_rotor", &TurbineParams::k_rotor, Rule::positive},
    {"k_tsr", &TurbineParams::k_tsr, Rule::positive},
    {"v_cut_in", &TurbineParams::v_cut_in, Rule::non_negative},
    {"v_cut_out", &TurbineParams::v_cut_out, Rule::positive},
    {"omega_ref_max", &TurbineParams::omega_ref_max, Rule::positive},
    {"p_ef_threshold", &TurbineParams::p_ef_threshold, Rule::finite},
    {"kpp", &TurbineParams::kpp, Rule::non_negative},
    {"kip", &TurbineParams::kip, Rule::non_negative},
    {"kpc", &TurbineParams::kpc, Rule::non_negative},
    {"kic", &TurbineParams::kic, Rule::non_negative},
    {"t_pi", &TurbineParams::t_pi, Rule::positive},
    {"beta_min", &TurbineParams::beta_min, Rule::finite},
    {"beta_max", &TurbineParams::beta_max, Rule::finite},
    {"dbeta_rate", &TurbineParams::dbeta_rate, Rule::positive},
    {"kpt", &TurbineParams::kpt, Rule::non_negative},
    {"kit", &TurbineParams::kit, Rule::non_negative},
    {"t_con", &TurbineParams::t_con, Rule::positive},
    {"t_f", &TurbineParams::t_f, Rule::positive},
    {"t_pc", &TurbineParams::t_pc, Rule::positive},
    {"pe_min", &TurbineParams::pe_min, Rule::non_negative},
    {"pe_max", &TurbineParams::pe_max, Rule::positive},
    {"dpe_rate", &TurbineParams::dpe_rate, Rule::positive},
    {"p_max", &TurbineParams::p_max, Rule::positive},
    {"v_wt", &TurbineParams::v_wt, Rule::finite},
    {"h_wt_1m", &TurbineParams::h_wt_1m, Rule::positive},
    {"h_wt_2m", &TurbineParams::h_wt_2m, Rule::positive},
    {"h_g_2m", &TurbineParams::h_g_2m, Rule::positive},
    {"d_shaft", &TurbineParams::d_shaft, Rule::non_negative},
    {"k_shaft", &TurbineParams::k_shaft, Rule::positive},
    {"omega0_2m", &TurbineParams::omega0_2m, Rule::positive},
};

bool parse_bool(std::string_view s, bool& out) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        out = false;
        return true;
    }
    return false;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate(const TurbineParams& p) {
    std::vector<Violation> out;
    for (const auto& f : kFieldRules) {
        const double v = p.*(f.member);
        const std::string name = f.name;
        if (!std::isfinite(v)) {
            out.push_back({name, name + " must be finite"});
        } else if (f.rule == Rule::positive && !(v > 0.0)) {
            out.push_back({name, name + " > 0"});
        } else if (f.rule == Rule::non_negative && v < 0.0) {
            out.push_back({name, name + " >= 0"});
        }
    }
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            if (!std::isfinite(p.cp_coeffs.alpha[i][j])) {
                out.push_back({"cp_coeffs", "cp_coeffs(" + std::to_string(i) + "," + std::to_string(j) + ") must be finite"});
            }
        }
    }
    const auto ordered = [&](const char* lo_name, double lo, const char* hi_name, double hi) {
        if (std::isfinite(lo) && std::isfinite(hi) && !(lo < hi)) {
            out.push_back({lo_name, std::string(lo_name) + " < " + hi_name});
        }
    };
    ordered("beta_min", p.beta_min, "beta_max", p.beta_max);
    ordered("pe_min", p.pe_min, "pe_max", p.pe_max);
    ordered("v_cut_in", p.v_cut_in, "v_cut_out", p.v_cut_out);
    return out;
}

std::vector<Violation> validate(const Scenario& s) {
    std::vector<Violation> out;
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) {
        out.push_back({"dt", "dt > 0"});
    } else if (!(s.duration >= s.dt) || !std::isfinite(s.duration)) {
        out.push_back({"duration", "duration >= dt"});
    }
    if (!(s.output_interval >= 0.0) || !std::isfinite(s.output_interval)) {
        out.push_back({"output_interval", "output_interval >= 0"});
    } else if (s.output_interval > 0.0 && s.dt > 0.0) {
        const double ratio = s.output_interval / s.dt;
        if (ratio < 1.0 - 1e-9 || std::abs(ratio - std::round(ratio)) > 1e-6) {
            out.push_back({"output_interval", "output_interval must be a whole multiple of dt"});
        }
    }
    const auto& pts = s.wind_profile.points;
    if (pts.empty()) {
        out.push_back({"wind_profile", "wind_profile needs at least one breakpoint"});
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (!std::isfinite(pts[k].t) || pts[k].t < 0.0) {
            out.push_back({"wind_profile", "breakpoint times must be finite and >= 0"});
        }
        if (k > 0 && !(pts[k].t > pts[k - 1].t)) {
            out.push_back({"wind_profile", "breakpoint times strictly increasing"});
        }
        if (!(pts[k].v >= 0.0 && pts[k].v <= 40.0)) {
            out.push_back({"wind_profile", "wind speeds within [0, 40] m/s"});
        }
    }
    return out;
}

WindProfile parse_wind_profile(std::string_view text) {
    WindProfile w;
    for (const auto item : split(text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw ConfigError(0, "wind_profile", "expected 't:v', got '" + std::string(item) + "'");
        }
        const auto t = parse_number(item.substr(0, colon));
        const auto v = parse_number(item.substr(colon + 1));
        if (!t || !v) {
            throw ConfigError(0, "wind_profile", "bad number in '" + std::string(item) + "'");
        }
        w.points.push_back({*t, *v});
    }
    return w;
}

std::string format_wind_profile(const WindProfile& w) {
    std::string out;
    for (std::size_t k = 0; k < w.points.size(); ++k) {
        if (k > 0) {
            out += ", ";
        }
        out += fmt_double(w.points[k].t) + ":" + fmt_double(w.points[k].v);
    }
    return out;
}

Config load_config(std::string_view text) {
    Config cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "", "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(line_no, "", "missing key");
        }

        const auto number = [&]() {
            const auto v = parse_number(value);
            if (!v) {
                throw ConfigError(line_no, key, "not a number: '" + std::string(value) + "'");
            }
            return *v;
        };

        bool handled = false;
        for (const auto& f : kDoubleFields) {
            if (key == f.name) {
                cfg.params.*(f.member) = number();
                handled = true;
                break;
            }
        }
        if (handled) {
            continue;
        }
        for (const auto& f : kBoolFields) {
            if (key == f.name) {
                if (!parse_bool(value, cfg.params.*(f.member))) {
                    throw ConfigError(line_no, key, "expected true or false");
                }
                handled = true;
                break;
            }
        }
        if (handled) {
            continue;
        }

        if (key == "cp_coeffs") {
            const auto items = split(value, ',');
            if (items.size() != 25) {
                throw ConfigError(line_no, key, "expected 25 comma-separated values (row-major, row = beta power), got " +
                                                    std::to_string(items.size()));
            }
            for (std::size_t k = 0; k < 25; ++k) {
                const auto v = parse_number(items[k]);
                if (!v) {
                    throw ConfigError(line_no, key, "not a number: '" + std::string(items[k]) + "'");
                }
                cfg.params.cp_coeffs.alpha[k / 5][k % 5] = *v;
            }
        } else if (key == "wind_profile") {
            try {
                cfg.scenario.wind_profile = parse_wind_profile(value);
            } catch (const ConfigError& e) {
                throw ConfigError(line_no, key, e.what());
            }
        } else if (key == "duration") {
            cfg.scenario.duration = number();
        } else if (key == "dt") {
            cfg.scenario.dt = number();
        } else if (key == "output_interval") {
            cfg.scenario.output_interval = number();
        } else if (key == "model") {
            if (value == "one-mass") {
                cfg.scenario.model = MechanicalModel::one_mass;
            } else if (value == "two-mass") {
                cfg.scenario.model = MechanicalModel::two_mass;
            } else {
                throw ConfigError(line_no, key, "expected one-mass or two-mass");
            }
        } else if (key == "integrator") {
            if (value == "rk4") {
                cfg.scenario.integrator = Integrator::rk4;
            } else if (value == "euler") {
                cfg.scenario.integrator = Integrator::euler;
            } else {
                throw ConfigError(line_no, key, "expected rk4 or euler");
            }
        } else {
            throw ConfigError(line_no, key, "unknown key");
        }
    }

    auto violations = validate(cfg.params);
    auto sv = validate(cfg.scenario);
    violations.insert(violations.end(), sv.begin(), sv.end());
    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return cfg;
}

TurbineParams load_params(std::string_view text) {
    return load_config(text).params;
}

std::string serialize(const TurbineParams& p) {
    std::ostringstream out;
    for (const auto& f : kDoubleFields) {
        out << f.name << " = " << fmt_double(p.*(f.member)) << '\n';
    }
    for (const auto& f : kBoolFields) {
        out << f.name << " = " << (p.*(f.member) ? "true" : "false") << '\n';
    }
    out << "cp_coeffs = ";
    for (std::size_t k = 0; k < 25; ++k) {
        out << (k ? ", " : "") << fmt_double(p.cp_coeffs.alpha[k / 5][k % 5]);
    }
    out << '\n';
    return out.str();
}

std::string serialize(const Config& c) {
    std::ostringstream out;
    out << serialize(c.params);
    out << "wind_profile = " << format_wind_profile(c.scenario.wind_profile) << '\n';
    out << "duration = " << fmt_double(c.scenario.duration) << '\n';
    out << "dt = " << fmt_double(c.scenario.dt) << '\n';
    out << "output_interval = " << fmt_double(c.scenario.output_interval) << '\n';
    out << "model = " << to_string(c.scenario.model) << '\n';
    out << "integrator = " << to_string(c.scenario.integrator) << '\n';
    return out.str();
}

}  // namespace vswt
