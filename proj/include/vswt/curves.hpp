#pragma once

#include "vswt/params.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vswt::curves {

struct Series {
    std::string label;
    std::vector<double> values;
};

/// One abscissa column and one ordinate column per family member.
struct CurveTable {
    std::string abscissa_label;
    std::vector<double> abscissa;
    std::vector<Series> series;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// lo, lo+step, ... up to hi (inclusive when hi is on the grid). Each point
/// is lo + k*step, not an accumulated sum.
std::vector<double> make_grid(double lo, double hi, double step);

/// Cp(lambda, beta), one series per beta.
CurveTable sweep_cp_vs_lambda(const std::vector<double>& betas, double lambda_min, double lambda_max, double step,
                              const TurbineParams& p, unsigned jobs = 1);

/// Cp at the tip speed ratio of omega_fixed and each wind speed.
CurveTable sweep_cp_vs_wind(const std::vector<double>& betas, double v_min, double v_max, double step,
                            double omega_fixed, const TurbineParams& p, unsigned jobs = 1);

/// Fixed pitch, one series per wind speed.
struct WindSweep {
    double beta = 0.0;
    std::vector<double> winds;
};

/// Fixed wind, one series per pitch angle.
struct BetaSweep {
    double wind = 12.0;
    std::vector<double> betas;
};

using PmechMode = std::variant<WindSweep, BetaSweep>;

/// P_mech(omega) floored at 0 and without cut-in/cut-out gating.
CurveTable sweep_pmech_vs_omega(const PmechMode& mode, double omega_min, double omega_max, double step,
                                const TurbineParams& p, unsigned jobs = 1);

struct Optimum {
    double lambda = 0.0;
    double cp = 0.0;
};

/// Maximum of Cp(., beta) over [lambda_min, lambda_max]: grid scan at
/// grid_step, then golden-section refinement around the best grid point to
/// a bracket below 1e-6. Ties go to the smaller lambda.
Optimum find_optimum(double beta, const TurbineParams& p, double lambda_min = 2.0, double lambda_max = 13.0,
                     double grid_step = 0.01);

/// Maximum of a sweep series and the abscissa where it occurs (first on ties).
std::pair<double, double> series_max(const CurveTable& t, std::size_t series_index);

}  // namespace vswt::curves
