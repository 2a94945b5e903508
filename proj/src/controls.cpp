#include "vswt/controls.hpp"

namespace vswt::controls {

double omega_ref(double p_ef, const TurbineParams& p) {
    if (p_ef < p.p_ef_threshold) {
        return -0.67 * p_ef * p_ef + 1.42 * p_ef + 0.51;
    }
    return p.omega_ref_max;
}

double omega_ref(double p_ef) {
    return omega_ref(p_ef, TurbineParams{});
}

PiStep pi_step(PiController c, double error, double dt) {
    const double integrated = c.integrator + error * dt;
    double u = c.kp * error + c.ki * integrated;
    bool saturated = false;
    if (c.u_max && u > *c.u_max) {
        u = *c.u_max;
        saturated = true;
    } else if (c.u_min && u < *c.u_min) {
        u = *c.u_min;
        saturated = true;
    }
    if (!saturated) {
        c.integrator = integrated;
    }
    c.last_output = u;
    return {c, u};
}

PitchSubsystem make_pitch_subsystem(const TurbineParams& p) {
    PitchSubsystem s;
    s.pi_speed.kp = p.kpp;
    s.pi_speed.ki = p.kip;
    s.pi_comp.kp = p.kpc;
    s.pi_comp.ki = p.kic;
    s.beta = p.beta_min;
    s.beta_cmd = p.beta_min;
    return s;
}

double comp_input(const PitchSubsystem& s, double p_e, const TurbineParams& p) {
    return p.comp_input_lag ? s.comp_filter : p_e;
}

PitchCommand pitch_command(PitchSubsystem s, double omega_err, double p_e, double dt, const TurbineParams& p) {
    const double comp_err = comp_input(s, p_e, p) - p.p_max;

    // The individual PIs are unlimited; the shared limit acts on their sum.
    auto speed = pi_step(s.pi_speed, omega_err, dt);
    auto comp = pi_step(s.pi_comp, comp_err, dt);
    const double candidate = speed.u + comp.u;
    const double cmd = std::clamp(candidate, p.beta_min, p.beta_max);
    if (cmd == candidate) {
        s.pi_speed = speed.state;
        s.pi_comp = comp.state;
    } else {
        s.pi_speed.last_output = speed.u;
        s.pi_comp.last_output = comp.u;
    }
    s.beta_cmd = cmd;
    return {s, cmd};
}

double rate_limit_only(double beta, double beta_cmd, double dt, const TurbineParams& p) {
    const double max_move = p.dbeta_rate * dt;
    return std::clamp(beta + std::clamp(beta_cmd - beta, -max_move, max_move), p.beta_min, p.beta_max);
}

PitchStep pitch_step(PitchSubsystem s, double omega_err, double p_e, double dt, const TurbineParams& p) {
    auto [next, cmd] = pitch_command(s, omega_err, p_e, dt, p);
    if (p.pitch_servo_lag) {
        next.beta = std::clamp(next.beta + dt * servo_slope(next.beta, cmd, p), p.beta_min, p.beta_max);
    } else {
        next.beta = rate_limit_only(next.beta, cmd, dt, p);
    }
    next.comp_filter += dt * (p_e - next.comp_filter) / p.t_pc;
    return {next, next.beta};
}

SpeedController make_speed_controller(const TurbineParams& p, double p_elec_0) {
    SpeedController s;
    s.pi.kp = p.kpt;
    s.pi.ki = p.kit;
    s.pi.u_min = p.pe_min - p_elec_0;
    s.pi.u_max = p.pe_max - p_elec_0;
    s.p_elec_0 = p_elec_0;
    s.p_cmd = p_elec_0;
    return s;
}

SpeedStep speed_ctrl_step(SpeedController s, double omega, double omega_ref, double dt) {
    auto [pi, u] = pi_step(s.pi, omega - omega_ref, dt);
    s.pi = pi;
    s.p_cmd = s.p_elec_0 + u;
    return {s, s.p_cmd};
}

}  // namespace vswt::controls
