#pragma once

#include "vswt/params.hpp"

#include <variant>

namespace vswt::drivetrain {

struct OneMass {
    double omega = 0.0;
};

/// Rotor (omega_wt) and generator (omega_g) inertias joined by a torsional
/// shaft; twist in rad.
struct TwoMass {
    double omega_wt = 0.0;
    double omega_g = 0.0;
    double twist = 0.0;
};

using DrivetrainState = std::variant<OneMass, TwoMass>;

/// Speeds below this (pu) cannot convert a nonzero power to torque.
inline constexpr double kMinSpeed = 1e-3;

/// dOmega/dt = (p_mech - p_e) / (2 h_wt). Power form, no division by speed.
double one_mass_deriv(double omega, double p_mech, double p_e, double h_wt);

struct TwoMassDeriv {
    double d_omega_wt = 0.0;
    double d_omega_g = 0.0;
    double d_twist = 0.0;
};

/// Torque-form torsional model. Throws NumericError if a speed is below
/// kMinSpeed while its power is nonzero.
TwoMassDeriv two_mass_deriv(const TwoMass& s, double p_mech, double p_e, const TurbineParams& p);

/// k_shaft * twist + d_shaft * (omega_wt - omega_g)
double shaft_torque(const TwoMass& s, const TurbineParams& p);

double rotor_speed(const DrivetrainState& s);
double generator_speed(const DrivetrainState& s);

}  // namespace vswt::drivetrain
