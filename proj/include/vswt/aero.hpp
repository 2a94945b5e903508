#pragma once

#include "vswt/errors.hpp"
#include "vswt/params.hpp"

namespace vswt::aero {

struct AeroPoint {
    double lambda = 0.0;
    double beta = 0.0;
    double cp = 0.0;
    double p_mech = 0.0;
};

/// lambda = k_tsr * omega / v. Throws DomainError for v <= 0.
double tip_speed_ratio(double omega_pu, double v_w, double k_tsr);

/// Cp(lambda, beta) = sum_i sum_j alpha(i,j) beta^i lambda^j, Horner in lambda
/// nested in Horner in beta. No range clamping.
double power_coefficient(double lambda, double beta_deg, const CpCoefficients& c);

/// k_rotor * cp * v^3; negative when cp is.
double mechanical_power(double cp, double v_w, double k_rotor);

/// Full aerodynamic chain, floored at zero. Wind outside [v_cut_in, v_cut_out]
/// yields zero unless `gate_cut_speeds` is false (static curves).
AeroPoint evaluate(double omega_pu, double beta_deg, double v_w, const TurbineParams& p, bool gate_cut_speeds = true);

/// evaluate(...).p_mech
double aero_power(double omega_pu, double beta_deg, double v_w, const TurbineParams& p);

inline bool online(double v_w, const TurbineParams& p) {
    return v_w >= p.v_cut_in && v_w <= p.v_cut_out;
}

}  // namespace vswt::aero
