#pragma once

#include "vswt/params.hpp"

namespace vswt::electrical {

/// Converter output p_e and its slow measurement p_ef, both pu.
struct PowerChannel {
    double p_e = 0.0;
    double p_ef = 0.0;
};

/// Lower output bound: pe_min while the turbine is online, 0 otherwise.
double lower_bound(const TurbineParams& p, bool online);

/// Slope of p_e toward p_cmd: first-order lag (t_con) limited to +-dpe_rate.
double converter_slope(double p_e, double p_cmd, const TurbineParams& p);

/// Slope of p_ef toward p_e (t_f lag).
double measure_slope(const PowerChannel& ch, const TurbineParams& p);

struct ConverterStep {
    PowerChannel channel;
    double p_e = 0.0;
};

/// One Euler step of lag -> rate limit -> clamp. Offline, the command is
/// forced to 0 and pe_min is not enforced.
[[nodiscard]] ConverterStep converter_step(PowerChannel ch, double p_cmd, double dt, const TurbineParams& p, bool online = true);

/// One Euler step of the measurement lag; returns the updated channel (p_ef).
[[nodiscard]] PowerChannel measure_step(PowerChannel ch, double dt, const TurbineParams& p);

}  // namespace vswt::electrical
