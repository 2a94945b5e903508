#include "vswt/engine.hpp"

#include "vswt/aero.hpp"
#include "vswt/curves.hpp"
#include "vswt/errors.hpp"
#include "vswt/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vswt::engine {

double wind_at(const WindProfile& w, double t) {
    const auto& pts = w.points;
    if (pts.empty()) {
        throw DomainError("wind profile has no breakpoints");
    }
    if (t <= pts.front().t) {
        return pts.front().v;
    }
    if (t >= pts.back().t) {
        return pts.back().v;
    }
    const auto hi = std::upper_bound(pts.begin(), pts.end(), t, [](double x, const WindBreakpoint& b) { return x < b.t; });
    const auto lo = hi - 1;
    const double frac = (t - lo->t) / (hi->t - lo->t);
    return lo->v + frac * (hi->v - lo->v);
}

MechanicalModel FullState::model() const {
    return std::holds_alternative<drivetrain::OneMass>(drivetrain) ? MechanicalModel::one_mass : MechanicalModel::two_mass;
}

namespace {

// Continuous states advanced by the integrator. For the one-mass model w2
// mirrors w1 and twist stays 0.
struct Continuous {
    double w1 = 0.0;
    double w2 = 0.0;
    double twist = 0.0;
    double p_e = 0.0;
    double p_ef = 0.0;
    double comp = 0.0;
    double beta = 0.0;

    Continuous operator+(const Continuous& o) const {
        return {w1 + o.w1, w2 + o.w2, twist + o.twist, p_e + o.p_e, p_ef + o.p_ef, comp + o.comp, beta + o.beta};
    }
    Continuous operator*(double k) const { return {w1 * k, w2 * k, twist * k, p_e * k, p_ef * k, comp * k, beta * k}; }

    double max_abs() const {
        return std::max({std::abs(w1), std::abs(w2), std::abs(twist), std::abs(p_e), std::abs(p_ef), std::abs(comp),
                         std::abs(beta)});
    }
    bool finite() const {
        return std::isfinite(w1) && std::isfinite(w2) && std::isfinite(twist) && std::isfinite(p_e) &&
               std::isfinite(p_ef) && std::isfinite(comp) && std::isfinite(beta);
    }
};

Continuous pack(const FullState& s) {
    Continuous x;
    if (const auto* one = std::get_if<drivetrain::OneMass>(&s.drivetrain)) {
        x.w1 = x.w2 = one->omega;
    } else {
        const auto& two = std::get<drivetrain::TwoMass>(s.drivetrain);
        x.w1 = two.omega_wt;
        x.w2 = two.omega_g;
        x.twist = two.twist;
    }
    x.p_e = s.power.p_e;
    x.p_ef = s.power.p_ef;
    x.comp = s.pitch.comp_filter;
    x.beta = s.pitch.beta;
    return x;
}

void unpack(const Continuous& x, FullState& s) {
    if (std::holds_alternative<drivetrain::OneMass>(s.drivetrain)) {
        s.drivetrain = drivetrain::OneMass{x.w1};
    } else {
        s.drivetrain = drivetrain::TwoMass{x.w1, x.w2, x.twist};
    }
    s.power.p_e = x.p_e;
    s.power.p_ef = x.p_ef;
    s.pitch.comp_filter = x.comp;
    s.pitch.beta = x.beta;
}

double gated_power(double omega_wt, double beta, double v, const TurbineParams& p) {
    return aero::online(v, p) ? aero::aero_power(omega_wt, beta, v, p) : 0.0;
}

// Commands held over one step.
struct Held {
    double p_cmd = 0.0;
    double beta_cmd = 0.0;
    bool online = true;
};

Continuous deriv(const Continuous& x, MechanicalModel model, const Held& u, double v, const TurbineParams& p) {
    Continuous d;
    const double p_mech = gated_power(x.w1, x.beta, v, p);
    if (model == MechanicalModel::one_mass) {
        d.w1 = d.w2 = drivetrain::one_mass_deriv(x.w1, p_mech, x.p_e, p.h_wt_1m);
    } else {
        const auto r = drivetrain::two_mass_deriv({x.w1, x.w2, x.twist}, p_mech, x.p_e, p);
        d.w1 = r.d_omega_wt;
        d.w2 = r.d_omega_g;
        d.twist = r.d_twist;
    }
    d.p_e = electrical::converter_slope(x.p_e, u.online ? u.p_cmd : 0.0, p);
    d.p_ef = (x.p_e - x.p_ef) / p.t_f;
    d.comp = (x.p_e - x.comp) / p.t_pc;
    d.beta = p.pitch_servo_lag ? controls::servo_slope(x.beta, u.beta_cmd, p) : 0.0;
    return d;
}

struct ControllerUpdate {
    controls::SpeedController speed;
    controls::PitchSubsystem pitch;
    Held held;
    double omega_ref = 0.0;
};

ControllerUpdate update_controllers(const FullState& s, double dt, const TurbineParams& p) {
    ControllerUpdate c;
    c.held.online = aero::online(s.wind, p);
    c.omega_ref = controls::omega_ref(s.power.p_ef, p);
    auto speed = controls::speed_ctrl_step(s.speed_ctrl, s.omega_g(), c.omega_ref, dt);
    c.speed = speed.state;
    c.held.p_cmd = speed.p_cmd;
    auto pitch = controls::pitch_command(s.pitch, s.omega_wt() - c.omega_ref, s.power.p_e, dt, p);
    c.pitch = pitch.state;
    c.held.beta_cmd = pitch.beta_cmd;
    return c;
}

}  // namespace

Signals compute_signals(const FullState& s, const TurbineParams& p) {
    Signals g;
    const double w = s.omega_wt();
    g.lambda = s.wind > 0.0 ? aero::tip_speed_ratio(w, s.wind, p.k_tsr) : 0.0;
    g.cp = aero::power_coefficient(g.lambda, s.pitch.beta, p.cp_coeffs);
    g.p_mech = gated_power(w, s.pitch.beta, s.wind, p);
    g.omega_ref = controls::omega_ref(s.power.p_ef, p);
    if (const auto* two = std::get_if<drivetrain::TwoMass>(&s.drivetrain)) {
        g.shaft_torque = drivetrain::shaft_torque(*two, p);
    }
    return g;
}

FullState step(const FullState& s, double dt, const TurbineParams& p, const WindProfile& wind, Integrator integrator) {
    if (!(dt > 0.0)) {
        throw DomainError("step needs dt > 0");
    }
    if (!std::isfinite(s.wind)) {
        throw NumericError("non-finite wind speed at t = " + std::to_string(s.t));
    }
    const auto ctl = update_controllers(s, dt, p);
    const auto model = s.model();
    const Continuous x0 = pack(s);

    // Wind is re-evaluated at each stage time; the commands stay held.
    const auto f = [&](double t, const Continuous& x) {
        return deriv(x, model, ctl.held, t == s.t ? s.wind : wind_at(wind, t), p);
    };
    Continuous x1 = integrator == Integrator::euler ? integrate::euler_step(f, s.t, x0, dt)
                                                    : integrate::rk4_step(f, s.t, x0, dt);
    if (model == MechanicalModel::one_mass) {
        x1.w2 = x1.w1;
        x1.twist = 0.0;
    }
    if (!p.pitch_servo_lag) {
        x1.beta = controls::rate_limit_only(x0.beta, ctl.held.beta_cmd, dt, p);
    }
    x1.beta = std::clamp(x1.beta, p.beta_min, p.beta_max);
    x1.p_e = std::clamp(x1.p_e, electrical::lower_bound(p, ctl.held.online), p.pe_max);

    FullState next = s;
    next.speed_ctrl = ctl.speed;
    next.pitch = ctl.pitch;
    unpack(x1, next);
    next.t = s.t + dt;
    next.wind = wind_at(wind, next.t);
    if (!x1.finite() || !std::isfinite(next.wind)) {
        throw NumericError("non-finite state after step at t = " + std::to_string(next.t));
    }
    next.signals = compute_signals(next, p);
    return next;
}

namespace {

double residual_of(const FullState& s, const TurbineParams& p) {
    constexpr double kProbeDt = 1e-3;
    const auto ctl = update_controllers(s, kProbeDt, p);
    double r = deriv(pack(s), s.model(), ctl.held, s.wind, p).max_abs();
    // Discrete parts: command defects and integrator drift.
    r = std::max(r, std::abs(ctl.held.beta_cmd - s.pitch.beta));
    r = std::max(r, std::abs(ctl.speed.pi.integrator - s.speed_ctrl.pi.integrator) / kProbeDt);
    r = std::max(r, std::abs(ctl.pitch.pi_speed.integrator - s.pitch.pi_speed.integrator) / kProbeDt);
    r = std::max(r, std::abs(ctl.pitch.pi_comp.integrator - s.pitch.pi_comp.integrator) / kProbeDt);
    return r;
}

// Smallest beta >= beta_min where the power at omega falls to target.
double solve_pitch(double omega, double v, double target, const TurbineParams& p) {
    const auto power = [&](double b) { return aero::aero_power(omega, b, v, p); };
    constexpr double kScan = 0.01;
    double lo = p.beta_min;
    double hi = lo;
    bool bracketed = false;
    while (hi < p.beta_max) {
        hi = std::min(p.beta_max, hi + kScan);
        if (power(hi) <= target) {
            bracketed = true;
            break;
        }
        lo = hi;
    }
    if (!bracketed) {
        throw NumericError("no pitch angle in [beta_min, beta_max] limits power to " + std::to_string(target) +
                           " pu at v = " + std::to_string(v) + " m/s");
    }
    for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
        const double mid = 0.5 * (lo + hi);
        (power(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

InitResult init_steady_state(const TurbineParams& p, double v0, MechanicalModel model, InitPolicy policy) {
    if (!(v0 >= p.v_cut_in && v0 <= p.v_cut_out)) {
        throw DomainError("initial wind " + std::to_string(v0) + " m/s outside [v_cut_in, v_cut_out]");
    }
    const auto power = [&](double omega, double beta) { return aero::aero_power(omega, beta, v0, p); };

    InitResult out;
    double omega = p.omega_ref_max;
    double beta = p.beta_min;
    double pe = 0.0;

    const double p_top = power(p.omega_ref_max, p.beta_min);
    if (p_top >= p.pe_max) {
        beta = solve_pitch(p.omega_ref_max, v0, p.pe_max, p);
        pe = p.pe_max;
    } else if (p_top >= p.p_ef_threshold) {
        pe = p_top;
    } else {
        // Damped fixed point p <- P(omega_ref(p)).
        constexpr double kDamping = 0.5;
        double pk = p_top;
        bool converged = false;
        for (int k = 1; k <= 1000; ++k) {
            const double target = power(controls::omega_ref(pk, p), p.beta_min);
            const double next = pk + kDamping * (target - pk);
            out.iterations = k;
            if (std::abs(next - pk) <= 1e-15) {
                pk = next;
                converged = true;
                break;
            }
            pk = next;
        }
        if (!converged) {
            throw NumericError("steady-state iteration did not converge at v = " + std::to_string(v0) +
                               " m/s (last residual " + std::to_string(std::abs(power(controls::omega_ref(pk, p), p.beta_min) - pk)) + ")");
        }
        pe = pk;
        if (pe < p.pe_min) {
            if (policy == InitPolicy::strict) {
                throw NumericError("no equilibrium at v = " + std::to_string(v0) + " m/s: available power " +
                                   std::to_string(pe) + " pu is below pe_min");
            }
            pe = p.pe_min;
            out.power_floor = true;
        }
        omega = controls::omega_ref(pe, p);
    }

    FullState& s = out.state;
    s.t = 0.0;
    s.wind = v0;
    const double p_mech = power(omega, beta);
    if (model == MechanicalModel::one_mass) {
        s.drivetrain = drivetrain::OneMass{omega};
    } else {
        s.drivetrain = drivetrain::TwoMass{omega, omega, p_mech / omega / p.k_shaft};
    }
    s.power = {pe, pe};

    s.pitch = controls::make_pitch_subsystem(p);
    s.pitch.comp_filter = pe;
    s.pitch.beta = beta;
    s.pitch.beta_cmd = beta;
    if (beta > p.beta_min) {
        // Only reached at rated power, where the compensation error is zero.
        if (p.kip > 0.0) {
            s.pitch.pi_speed.integrator = beta / p.kip;
        } else if (p.kic > 0.0) {
            s.pitch.pi_comp.integrator = beta / p.kic;
        } else {
            throw NumericError("pitch loop has no integral action to hold beta = " + std::to_string(beta));
        }
    }
    s.speed_ctrl = controls::make_speed_controller(p, pe);
    s.signals = compute_signals(s, p);

    out.residual = residual_of(s, p);
    if (!out.power_floor && !(out.residual < 1e-8)) {
        throw NumericError("steady state at v = " + std::to_string(v0) + " m/s has residual " +
                           std::to_string(out.residual));
    }
    return out;
}

std::vector<std::pair<std::string_view, const std::vector<double>*>> Trajectory::columns() const {
    std::vector<std::pair<std::string_view, const std::vector<double>*>> c = {
        {"t", &t},           {"v_w", &v_w},     {"beta", &beta},         {"lambda", &lambda},
        {"cp", &cp},         {"p_mech", &p_mech}, {"p_e", &p_e},         {"p_ef", &p_ef},
        {"omega_wt", &omega_wt}, {"omega_g", &omega_g}, {"omega_ref", &omega_ref},
    };
    if (model == MechanicalModel::two_mass) {
        c.emplace_back("shaft_torque", &shaft_torque);
    }
    return c;
}

void Trajectory::record(const FullState& s) {
    t.push_back(s.t);
    v_w.push_back(s.wind);
    beta.push_back(s.pitch.beta);
    lambda.push_back(s.signals.lambda);
    cp.push_back(s.signals.cp);
    p_mech.push_back(s.signals.p_mech);
    p_e.push_back(s.power.p_e);
    p_ef.push_back(s.power.p_ef);
    omega_wt.push_back(s.omega_wt());
    omega_g.push_back(s.omega_g());
    omega_ref.push_back(s.signals.omega_ref);
    if (model == MechanicalModel::two_mass) {
        shaft_torque.push_back(s.signals.shaft_torque);
    }
}

Trajectory simulate(const Scenario& scenario, const TurbineParams& p) {
    auto violations = validate(p);
    const auto sv = validate(scenario);
    violations.insert(violations.end(), sv.begin(), sv.end());
    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }

    const double dt = scenario.dt;
    const auto n_steps = static_cast<long long>(std::llround(scenario.duration / dt));
    const long long every = scenario.output_interval > 0.0 ? std::max(1LL, std::llround(scenario.output_interval / dt)) : 1;

    auto init = init_steady_state(p, wind_at(scenario.wind_profile, 0.0), scenario.model, InitPolicy::allow_power_floor);
    FullState state = std::move(init.state);

    Trajectory traj;
    traj.model = scenario.model;
    traj.sample_interval = static_cast<double>(every) * dt;
    traj.power_floor_start = init.power_floor;
    const auto expected = static_cast<std::size_t>(n_steps / every + 1);
    for (auto* col : {&traj.t, &traj.v_w, &traj.beta, &traj.lambda, &traj.cp, &traj.p_mech, &traj.p_e, &traj.p_ef,
                      &traj.omega_wt, &traj.omega_g, &traj.omega_ref}) {
        col->reserve(expected);
    }
    traj.record(state);
    for (long long i = 1; i <= n_steps; ++i) {
        state.t = static_cast<double>(i - 1) * dt;
        state = step(state, dt, p, scenario.wind_profile, scenario.integrator);
        if (i % every == 0) {
            state.t = static_cast<double>(i) * dt;
            traj.record(state);
        }
    }
    return traj;
}

double calibrate_k_tsr(const TurbineParams& p, double v, double omega) {
    return curves::find_optimum(0.0, p).lambda * v / omega;
}

}  // namespace vswt::engine
