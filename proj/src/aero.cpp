#include "vswt/aero.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vswt::aero {

double tip_speed_ratio(double omega_pu, double v_w, double k_tsr) {
    if (!(v_w > 0.0)) {
        throw DomainError("tip speed ratio needs wind speed > 0, got " + std::to_string(v_w));
    }
    return k_tsr * omega_pu / v_w;
}

double power_coefficient(double lambda, double beta_deg, const CpCoefficients& c) {
    double cp = 0.0;
    for (int i = 4; i >= 0; --i) {
        const auto& row = c.alpha[static_cast<std::size_t>(i)];
        double in_lambda = 0.0;
        for (int j = 4; j >= 0; --j) {
            in_lambda = in_lambda * lambda + row[static_cast<std::size_t>(j)];
        }
        cp = cp * beta_deg + in_lambda;
    }
    return cp;
}

double mechanical_power(double cp, double v_w, double k_rotor) {
    return k_rotor * cp * v_w * v_w * v_w;
}

AeroPoint evaluate(double omega_pu, double beta_deg, double v_w, const TurbineParams& p, bool gate_cut_speeds) {
    AeroPoint pt;
    pt.beta = beta_deg;
    pt.lambda = tip_speed_ratio(omega_pu, v_w, p.k_tsr);
    pt.cp = power_coefficient(pt.lambda, beta_deg, p.cp_coeffs);
    if (gate_cut_speeds && !online(v_w, p)) {
        pt.p_mech = 0.0;
    } else {
        pt.p_mech = std::max(0.0, mechanical_power(pt.cp, v_w, p.k_rotor));
    }
    return pt;
}

double aero_power(double omega_pu, double beta_deg, double v_w, const TurbineParams& p) {
    return evaluate(omega_pu, beta_deg, v_w, p).p_mech;
}

}  // namespace vswt::aero
