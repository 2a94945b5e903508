#include "vswt/drivetrain.hpp"

#include "vswt/errors.hpp"

#include <string>

namespace vswt::drivetrain {

double one_mass_deriv(double /*omega*/, double p_mech, double p_e, double h_wt) {
    return (p_mech - p_e) / (2.0 * h_wt);
}

namespace {

double to_torque(double power, double speed, const char* which) {
    if (power == 0.0) {
        return 0.0;
    }
    if (speed < kMinSpeed) {
        throw NumericError(std::string(which) + " speed " + std::to_string(speed) + " pu is below the torque-conversion guard");
    }
    return power / speed;
}

}  // namespace

TwoMassDeriv two_mass_deriv(const TwoMass& s, double p_mech, double p_e, const TurbineParams& p) {
    const double t_mech = to_torque(p_mech, s.omega_wt, "rotor");
    const double t_elec = to_torque(p_e, s.omega_g, "generator");
    const double t_shaft = shaft_torque(s, p);
    return {
        (t_mech - t_shaft) / (2.0 * p.h_wt_2m),
        (t_shaft - t_elec) / (2.0 * p.h_g_2m),
        p.omega0_2m * (s.omega_wt - s.omega_g),
    };
}

double shaft_torque(const TwoMass& s, const TurbineParams& p) {
    return p.k_shaft * s.twist + p.d_shaft * (s.omega_wt - s.omega_g);
}

double rotor_speed(const DrivetrainState& s) {
    if (const auto* one = std::get_if<OneMass>(&s)) {
        return one->omega;
    }
    return std::get<TwoMass>(s).omega_wt;
}

double generator_speed(const DrivetrainState& s) {
    if (const auto* one = std::get_if<OneMass>(&s)) {
        return one->omega;
    }
    return std::get<TwoMass>(s).omega_g;
}

}  // namespace vswt::drivetrain
