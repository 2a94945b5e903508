#include "vswt/curves.hpp"

#include "vswt/aero.hpp"
#include "vswt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

namespace vswt::curves {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Runs body(k) for k in [0, n) on up to `jobs` threads; each k writes only its own slot.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), n);
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) {
            body(k);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < n; k += workers) {
                body(k);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

void require_members(std::size_t n, const char* what) {
    if (n == 0) {
        throw DomainError(std::string("empty ") + what + " list");
    }
}

}  // namespace

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("grid needs finite bounds and step > 0");
    }
    if (hi < lo) {
        throw DomainError("grid upper bound " + fmt(hi) + " below lower bound " + fmt(lo));
    }
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) {
        g[k] = lo + static_cast<double>(k) * step;
    }
    return g;
}

CurveTable sweep_cp_vs_lambda(const std::vector<double>& betas, double lambda_min, double lambda_max, double step,
                              const TurbineParams& p, unsigned jobs) {
    require_members(betas.size(), "pitch angle");
    if (lambda_min < 0.0 || lambda_max > 20.0) {
        throw DomainError("tip speed ratio range must lie within [0, 20]");
    }
    CurveTable t;
    t.abscissa_label = "lambda";
    t.abscissa = make_grid(lambda_min, lambda_max, step);
    t.series.resize(betas.size());
    parallel_for(betas.size(), jobs, [&](std::size_t k) {
        auto& s = t.series[k];
        s.label = "cp_beta=" + fmt(betas[k]);
        s.values.reserve(t.abscissa.size());
        for (const double lambda : t.abscissa) {
            s.values.push_back(aero::power_coefficient(lambda, betas[k], p.cp_coeffs));
        }
    });
    t.metadata = {{"curve", "cp-lambda"}, {"lambda_min", fmt(lambda_min)}, {"lambda_max", fmt(lambda_max)}, {"step", fmt(step)}};
    return t;
}

CurveTable sweep_cp_vs_wind(const std::vector<double>& betas, double v_min, double v_max, double step,
                            double omega_fixed, const TurbineParams& p, unsigned jobs) {
    require_members(betas.size(), "pitch angle");
    if (v_min < p.v_cut_in || v_max > p.v_cut_out) {
        throw DomainError("wind range must lie within [v_cut_in, v_cut_out] = [" + fmt(p.v_cut_in) + ", " +
                          fmt(p.v_cut_out) + "]");
    }
    CurveTable t;
    t.abscissa_label = "v_w";
    t.abscissa = make_grid(v_min, v_max, step);
    t.series.resize(betas.size());
    parallel_for(betas.size(), jobs, [&](std::size_t k) {
        auto& s = t.series[k];
        s.label = "cp_beta=" + fmt(betas[k]);
        s.values.reserve(t.abscissa.size());
        for (const double v : t.abscissa) {
            const double lambda = aero::tip_speed_ratio(omega_fixed, v, p.k_tsr);
            s.values.push_back(aero::power_coefficient(lambda, betas[k], p.cp_coeffs));
        }
    });
    t.metadata = {{"curve", "cp-vw"}, {"omega", fmt(omega_fixed)}, {"k_tsr", fmt(p.k_tsr)},
                  {"v_min", fmt(v_min)}, {"v_max", fmt(v_max)}, {"step", fmt(step)}};
    return t;
}

CurveTable sweep_pmech_vs_omega(const PmechMode& mode, double omega_min, double omega_max, double step,
                                const TurbineParams& p, unsigned jobs) {
    if (omega_min < 0.0 || omega_max > p.omega_ref_max + 1e-12) {
        throw DomainError("rotor speed range must lie within [0, " + fmt(p.omega_ref_max) + "]");
    }
    struct Member {
        double beta;
        double wind;
        std::string label;
    };
    std::vector<Member> members;
    CurveTable t;
    if (const auto* ws = std::get_if<WindSweep>(&mode)) {
        require_members(ws->winds.size(), "wind speed");
        for (const double v : ws->winds) {
            if (!(v > 0.0)) {
                throw DomainError("wind speeds must be > 0");
            }
            members.push_back({ws->beta, v, "p_mech_v=" + fmt(v)});
        }
        t.metadata = {{"curve", "pmech-omega"}, {"mode", "wind"}, {"beta", fmt(ws->beta)}};
    } else {
        const auto& bs = std::get<BetaSweep>(mode);
        require_members(bs.betas.size(), "pitch angle");
        if (!(bs.wind > 0.0)) {
            throw DomainError("wind speed must be > 0");
        }
        for (const double b : bs.betas) {
            members.push_back({b, bs.wind, "p_mech_beta=" + fmt(b)});
        }
        t.metadata = {{"curve", "pmech-omega"}, {"mode", "beta"}, {"v_w", fmt(bs.wind)}};
    }
    t.metadata.emplace_back("k_tsr", fmt(p.k_tsr));
    t.abscissa_label = "omega";
    t.abscissa = make_grid(omega_min, omega_max, step);
    t.series.resize(members.size());
    parallel_for(members.size(), jobs, [&](std::size_t k) {
        auto& s = t.series[k];
        s.label = members[k].label;
        s.values.reserve(t.abscissa.size());
        for (const double w : t.abscissa) {
            s.values.push_back(aero::evaluate(w, members[k].beta, members[k].wind, p, false).p_mech);
        }
    });
    return t;
}

Optimum find_optimum(double beta, const TurbineParams& p, double lambda_min, double lambda_max, double grid_step) {
    const auto cp = [&](double l) { return aero::power_coefficient(l, beta, p.cp_coeffs); };
    const auto grid = make_grid(lambda_min, lambda_max, grid_step);
    std::size_t best = 0;
    double best_cp = cp(grid[0]);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double c = cp(grid[k]);
        if (c > best_cp) {
            best_cp = c;
            best = k;
        }
    }

    double a = best > 0 ? grid[best - 1] : grid[best];
    double b = best + 1 < grid.size() ? grid[best + 1] : grid[best];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = cp(x1);
    double f2 = cp(x2);
    while (b - a > 1e-7) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = cp(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = cp(x2);
        }
    }
    const double refined = 0.5 * (a + b);
    const double refined_cp = cp(refined);
    if (refined_cp > best_cp) {
        return {refined, refined_cp};
    }
    return {grid[best], best_cp};
}

std::pair<double, double> series_max(const CurveTable& t, std::size_t series_index) {
    const auto& v = t.series.at(series_index).values;
    const auto it = std::max_element(v.begin(), v.end());
    return {*it, t.abscissa[static_cast<std::size_t>(it - v.begin())]};
}

}  // namespace vswt::curves
