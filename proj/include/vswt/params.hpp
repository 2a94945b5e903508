#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vswt {

/// Power-coefficient polynomial coefficients, alpha[i][j] multiplies beta^i * lambda^j.
struct CpCoefficients {
    std::array<std::array<double, 5>, 5> alpha{};

    /// GE 3.6 coefficients at three significant digits. Entry (2,1) is -1.10e-2;
    /// see printed_paper_table() for the variant with -1.01e-2.
    static CpCoefficients ge36();

    /// The table exactly as commonly reprinted, including alpha(2,1) = -1.01e-2.
    /// That entry makes Cp grow with pitch angle and exceed the Betz limit; kept
    /// for comparison runs only.
    static CpCoefficients printed_paper_table();

    bool operator==(const CpCoefficients&) const = default;
};

enum class MechanicalModel { one_mass, two_mass };

std::string_view to_string(MechanicalModel m);

/// Complete parameter set of the turbine model. Powers in pu of s_base,
/// speeds in pu of the rotor base speed, angles in degrees.
struct TurbineParams {
    double s_base = 3.6e6;
    double k_rotor = 0.00145;
    /// Omega_0 * R of the tip-speed-ratio definition: 1.335 rad/s base speed
    /// times the 52 m rotor radius of the GE 3.6 machine.
    double k_tsr = 1.335 * 52.0;
    CpCoefficients cp_coeffs = CpCoefficients::ge36();

    double v_cut_in = 4.0;
    double v_cut_out = 25.0;

    double omega_ref_max = 1.2;
    double p_ef_threshold = 0.75;

    double kpp = 150.0;
    double kip = 25.0;
    double kpc = 3.0;
    double kic = 30.0;
    double t_pi = 0.01;
    double beta_min = 0.0;
    double beta_max = 27.0;
    double dbeta_rate = 10.0;

    double kpt = 3.0;
    double kit = 0.6;

    double t_con = 0.02;
    double t_f = 5.0;
    double t_pc = 0.05;
    double pe_min = 0.1;
    double pe_max = 1.0;
    double dpe_rate = 0.45;
    double p_max = 1.0;

    /// Terminal voltage. Not used by any model equation.
    double v_wt = 1.0;

    double h_wt_1m = 5.19;
    double h_wt_2m = 4.29;
    double h_g_2m = 0.90;
    double d_shaft = 1.5;
    double k_shaft = 296.7;
    double omega0_2m = 1.335;

    /// When false the pitch servo lag (t_pi) is bypassed: beta follows the
    /// command through the rate limiter only.
    bool pitch_servo_lag = true;
    /// When false the compensation PI sees p_e directly instead of lag_{t_pc}(p_e).
    bool comp_input_lag = true;

    bool operator==(const TurbineParams&) const = default;
};

struct WindBreakpoint {
    double t = 0.0;
    double v = 0.0;
    bool operator==(const WindBreakpoint&) const = default;
};

/// Piecewise-linear wind speed in time, held constant outside the breakpoints.
struct WindProfile {
    std::vector<WindBreakpoint> points;

    static WindProfile constant(double v);
    static WindProfile ramp(double t0, double v0, double t1, double v1);

    bool operator==(const WindProfile&) const = default;
};

enum class Integrator { rk4, euler };

std::string_view to_string(Integrator i);

struct Scenario {
    WindProfile wind_profile = WindProfile::ramp(0.0, 5.0, 150.0, 20.0);
    double duration = 150.0;
    double dt = 1e-3;
    /// Spacing of recorded samples; 0 records every integration step.
    double output_interval = 1e-2;
    MechanicalModel model = MechanicalModel::one_mass;
    Integrator integrator = Integrator::rk4;

    bool operator==(const Scenario&) const = default;
};

/// Everything a config document can carry.
struct Config {
    TurbineParams params;
    Scenario scenario;
};

/// Malformed config text. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, std::string key, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

struct Violation {
    std::string field;
    std::string rule;
};

/// A parameter set or scenario that parsed but breaks an invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Returns every violated invariant; empty means valid.
std::vector<Violation> validate(const TurbineParams& p);
std::vector<Violation> validate(const Scenario& s);

/// Parses the flat `key = value` format. Missing keys keep their defaults.
/// Throws ConfigError on syntax or unknown keys and ValidationError when the
/// result is invalid.
Config load_config(std::string_view text);
TurbineParams load_params(std::string_view text);

/// Writes every key, so that load_config(serialize(c)) == c.
std::string serialize(const Config& c);
std::string serialize(const TurbineParams& p);

/// Parses "t0:v0, t1:v1, ...".
WindProfile parse_wind_profile(std::string_view text);
std::string format_wind_profile(const WindProfile& w);

}  // namespace vswt
