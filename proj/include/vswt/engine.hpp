#pragma once

#include "vswt/controls.hpp"
#include "vswt/drivetrain.hpp"
#include "vswt/electrical.hpp"
#include "vswt/params.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace vswt::engine {

/// Piecewise-linear interpolation, constant outside the breakpoints.
double wind_at(const WindProfile& w, double t);

/// Algebraic signals recomputed from the state at its own time stamp.
struct Signals {
    double lambda = 0.0;
    double cp = 0.0;
    double p_mech = 0.0;
    double omega_ref = 0.0;
    double shaft_torque = 0.0;
};

struct FullState {
    double t = 0.0;
    double wind = 0.0;
    drivetrain::DrivetrainState drivetrain;
    controls::PitchSubsystem pitch;
    controls::SpeedController speed_ctrl;
    electrical::PowerChannel power;
    Signals signals;

    MechanicalModel model() const;
    double omega_wt() const { return drivetrain::rotor_speed(drivetrain); }
    double omega_g() const { return drivetrain::generator_speed(drivetrain); }
    double beta() const { return pitch.beta; }
};

Signals compute_signals(const FullState& s, const TurbineParams& p);

enum class InitPolicy {
    /// Throw NumericError unless a true equilibrium exists.
    strict,
    /// When the aerodynamic power available at v0 is below pe_min, start from
    /// p_e = pe_min, omega = omega_ref(pe_min), beta = beta_min instead.
    allow_power_floor,
};

struct InitResult {
    FullState state;
    /// Largest |state derivative| (and controller stationarity defect) at the returned state.
    double residual = 0.0;
    /// True when the power floor bound the operating point (not an equilibrium).
    bool power_floor = false;
    int iterations = 0;
};

/// Steady operating point at constant wind v0 with every lag and PI state at
/// its equilibrium value. Throws DomainError outside [v_cut_in, v_cut_out] and
/// NumericError when the fixed-point iteration does not converge.
InitResult init_steady_state(const TurbineParams& p, double v0, MechanicalModel model,
                             InitPolicy policy = InitPolicy::strict);

/// Advances one step: controllers update once from the state at s.t, then the
/// continuous states (speeds, twist, p_e, p_ef, compensation filter, beta)
/// are integrated with the commands held. Throws NumericError on a
/// non-finite result.
FullState step(const FullState& s, double dt, const TurbineParams& p, const WindProfile& wind,
               Integrator integrator = Integrator::rk4);

/// Uniformly sampled record of a run. shaft_torque is empty for one-mass runs.
struct Trajectory {
    MechanicalModel model = MechanicalModel::one_mass;
    double sample_interval = 0.0;
    bool power_floor_start = false;
    std::vector<double> t, v_w, beta, lambda, cp, p_mech, p_e, p_ef, omega_wt, omega_g, omega_ref, shaft_torque;

    std::size_t size() const { return t.size(); }
    /// Columns in output order; shaft_torque only for two-mass runs.
    std::vector<std::pair<std::string_view, const std::vector<double>*>> columns() const;
    void record(const FullState& s);
};

/// Initializes at wind_at(0) (power-floor start allowed) and steps to
/// scenario.duration. Deterministic.
Trajectory simulate(const Scenario& scenario, const TurbineParams& p);

/// k_tsr placing the Cp(., 0) optimum at omega (pu) and wind v.
double calibrate_k_tsr(const TurbineParams& p, double v = 14.0, double omega = 1.2);

}  // namespace vswt::engine
