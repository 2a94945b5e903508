#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's evaluation paths.

#include <array>
#include <cmath>
#include <cstddef>

namespace vswt::oracle {

// Coefficient table typed in separately from the library (row = beta power).
inline constexpr std::array<std::array<double, 5>, 5> kAlpha = {{
    {-4.19e-1, 2.18e-1, -1.24e-2, -1.34e-4, 1.15e-5},
    {-6.76e-2, 6.04e-2, -1.39e-2, 1.07e-3, -2.39e-5},
    {1.57e-2, -1.10e-2, 2.15e-3, -1.49e-4, 2.79e-6},
    {-8.60e-4, 5.71e-4, -1.05e-4, 5.99e-6, -8.91e-8},
    {1.48e-5, -9.48e-6, 1.62e-6, -7.15e-8, 4.97e-10},
}};

// Term-by-term double sum with std::pow.
inline double naive_cp(double lambda, double beta) {
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            s += kAlpha[i][j] * std::pow(beta, static_cast<double>(i)) * std::pow(lambda, static_cast<double>(j));
        }
    }
    return s;
}

struct GridMax {
    double x = 0.0;
    double value = -1e300;
};

template <typename F>
GridMax dense_max(const F& f, double lo, double hi, double step) {
    GridMax best;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= n; ++k) {
        const double x = lo + static_cast<double>(k) * step;
        const double v = f(x);
        if (v > best.value) {
            best = {x, v};
        }
    }
    return best;
}

// Unit step response of a first-order lag.
inline double lag_step_response(double t, double tau) {
    return 1.0 - std::exp(-t / tau);
}

// Trapezoidal integral of samples y over uniformly spaced abscissa with spacing h.
template <typename V>
double trapezoid(const V& y, std::size_t from, std::size_t to, double h) {
    double s = 0.0;
    for (std::size_t k = from; k < to; ++k) {
        s += 0.5 * (y[k] + y[k + 1]) * h;
    }
    return s;
}

}  // namespace vswt::oracle
