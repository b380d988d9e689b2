#pragma once

// Central differences with Richardson extrapolation (Ridders' tableau).

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rotring/errors.hpp"

namespace rotring::numerics {

struct DerivativeOptions {
    double initial_step = 1e-2;
    // Stencil points must stay inside [lower, upper].
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    int max_levels = 10;
    double shrink = 1.4;
};

struct DerivativeResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

namespace detail {

// `stencil(h)` is an O(h^2)-accurate approximation with an even error
// expansion in h. Extrapolates h -> 0 and keeps the entry of the tableau with
// the smallest error estimate; stops once higher orders start to diverge
// (round-off in the stencil dominates) or the estimate is below tol / 10.
template <class Stencil>
DerivativeResult ridders(Stencil&& stencil, double h, double tol, int levels, double shrink) {
    const double con2 = shrink * shrink;
    std::vector<std::vector<double>> a(levels, std::vector<double>(levels));
    a[0][0] = stencil(h);
    DerivativeResult best{a[0][0], std::numeric_limits<double>::infinity()};
    for (int i = 1; i < levels; ++i) {
        h /= shrink;
        a[0][i] = stencil(h);
        double fac = con2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= con2;
            const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]),
                                         std::abs(a[j][i] - a[j - 1][i - 1]));
            if (errt <= best.error_estimate) best = {a[j][i], errt};
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * best.error_estimate) break;
        if (best.error_estimate <= 0.1 * tol) break;
    }
    if (std::isnan(best.value)) throw numerical_failure("derivative: NaN in difference tableau");
    return best;
}

inline void check_stencil(double x, const DerivativeOptions& opt) {
    if (!(opt.initial_step > 0.0)) throw domain_error("derivative: initial step must be > 0");
    if (x - opt.initial_step < opt.lower || x + opt.initial_step > opt.upper)
        throw domain_error("derivative: domain boundary too close for the initial step");
}

}  // namespace detail

template <class F>
DerivativeResult derivative(F&& f, double x, double tol, const DerivativeOptions& opt = {}) {
    detail::check_stencil(x, opt);
    auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    return detail::ridders(central, opt.initial_step, tol, opt.max_levels, opt.shrink);
}

template <class F>
DerivativeResult second_derivative(F&& f, double x, double tol, const DerivativeOptions& opt = {}) {
    detail::check_stencil(x, opt);
    const double f0 = f(x);
    auto central = [&](double h) { return (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h); };
    return detail::ridders(central, opt.initial_step, tol, opt.max_levels, opt.shrink);
}

}  // namespace rotring::numerics
