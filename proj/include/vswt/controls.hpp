#pragma once

#include "vswt/params.hpp"

#include <algorithm>
#include <optional>

namespace vswt::controls {

/// Rotor speed reference from the measured electrical power: quadratic law
/// below p_ef_threshold, omega_ref_max at and above it.
double omega_ref(double p_ef, const TurbineParams& p);
double omega_ref(double p_ef);

/// Discrete PI with conditional-integration anti-windup.
struct PiController {
    double kp = 0.0;
    double ki = 0.0;
    double integrator = 0.0;
    std::optional<double> u_min;
    std::optional<double> u_max;
    double last_output = 0.0;
};

struct PiStep {
    PiController state;
    double u = 0.0;
};

/// u = kp*e + ki*(I + e*dt). If u leaves [u_min, u_max] it is clamped and I is
/// left unchanged, otherwise I += e*dt.
[[nodiscard]] PiStep pi_step(PiController c, double error, double dt);

/// Slope of a first-order lag toward `target`, limited to +-rate.
inline double rate_limited_lag_slope(double x, double target, double tau, double rate) {
    return std::clamp((target - x) / tau, -rate, rate);
}

/// Speed PI plus compensation PI, summed into the pitch command, followed by
/// the servo lag, the rate limiter and the angle limits.
struct PitchSubsystem {
    PiController pi_speed;
    PiController pi_comp;
    /// State of the t_pc lag on p_e that feeds the compensation PI.
    double comp_filter = 0.0;
    /// Servo output, degrees.
    double beta = 0.0;
    /// Saturated command from the last update, degrees.
    double beta_cmd = 0.0;
};

PitchSubsystem make_pitch_subsystem(const TurbineParams& p);

struct PitchCommand {
    PitchSubsystem state;
    double beta_cmd = 0.0;
};

/// Controller half of the pitch loop: updates both PIs once and returns the
/// saturated pitch command. Both integrators freeze while the summed command
/// lies outside [beta_min, beta_max].
[[nodiscard]] PitchCommand pitch_command(PitchSubsystem s, double omega_err, double p_e, double dt, const TurbineParams& p);

/// Compensation PI input signal, lag_{t_pc}(p_e) or p_e when the lag is bypassed.
double comp_input(const PitchSubsystem& s, double p_e, const TurbineParams& p);

/// dbeta/dt of the servo (lag + rate limit) for a held command.
inline double servo_slope(double beta, double beta_cmd, const TurbineParams& p) {
    return rate_limited_lag_slope(beta, beta_cmd, p.t_pi, p.dbeta_rate);
}

struct PitchStep {
    PitchSubsystem state;
    double beta = 0.0;
};

/// One forward-Euler step of the whole pitch subsystem. omega_err = omega_wt - omega_ref.
[[nodiscard]] PitchStep pitch_step(PitchSubsystem s, double omega_err, double p_e, double dt, const TurbineParams& p);

/// Advances beta toward beta_cmd over dt with the servo bypassed (rate limit only).
double rate_limit_only(double beta, double beta_cmd, double dt, const TurbineParams& p);

struct SpeedController {
    PiController pi;
    double p_elec_0 = 0.0;
    double p_cmd = 0.0;
};

/// Speed PI with its output limited so that p_cmd stays in [pe_min, pe_max].
SpeedController make_speed_controller(const TurbineParams& p, double p_elec_0);

struct SpeedStep {
    SpeedController state;
    double p_cmd = 0.0;
};

/// p_cmd = p_elec_0 + PI(omega - omega_ref).
[[nodiscard]] SpeedStep speed_ctrl_step(SpeedController s, double omega, double omega_ref, double dt);

}  // namespace vswt::controls
