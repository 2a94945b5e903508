#include "vswt/electrical.hpp"

#include "vswt/controls.hpp"

#include <algorithm>

namespace vswt::electrical {

double lower_bound(const TurbineParams& p, bool online) {
    return online ? p.pe_min : 0.0;
}

double converter_slope(double p_e, double p_cmd, const TurbineParams& p) {
    return controls::rate_limited_lag_slope(p_e, p_cmd, p.t_con, p.dpe_rate);
}

double measure_slope(const PowerChannel& ch, const TurbineParams& p) {
    return (ch.p_e - ch.p_ef) / p.t_f;
}

ConverterStep converter_step(PowerChannel ch, double p_cmd, double dt, const TurbineParams& p, bool online) {
    const double target = online ? p_cmd : 0.0;
    const double moved = ch.p_e + dt * converter_slope(ch.p_e, target, p);
    ch.p_e = std::clamp(moved, lower_bound(p, online), p.pe_max);
    return {ch, ch.p_e};
}

PowerChannel measure_step(PowerChannel ch, double dt, const TurbineParams& p) {
    ch.p_ef += dt * measure_slope(ch, p);
    return ch;
}

}  // namespace vswt::electrical
