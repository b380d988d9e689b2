#pragma once

// Quadrature kernels.
//
//  * tanh_sinh              finite interval, tolerant of integrable endpoint
//                           singularities (log, inverse square root).
//  * integrate_semi_infinite  (0, inf) by truncation at x_max plus a tail
//                           bound, tanh_sinh on [0, 1] and dyadic panels beyond.
//  * integrate_interval     adaptive Gauss-Kronrod (7/15) for smooth, possibly
//                           complex-valued and oscillatory integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rotring/errors.hpp"

namespace rotring::numerics {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

// Bound on the absolute tail  integral_x^inf |f|.  Must be non-increasing in x.
using TailBound = std::function<double(double)>;

namespace detail {

inline void check_value(double v) {
    if (std::isnan(v)) throw numerical_failure("integrand returned NaN");
}

template <class T>
void check_value(const std::complex<T>& v) {
    if (std::isnan(v.real()) || std::isnan(v.imag()))
        throw numerical_failure("integrand returned NaN");
}

}  // namespace detail

// Tanh-sinh rule on [a, b]. Nodes are generated as distances from the nearer
// endpoint, so f is never evaluated at a or b and there is no cancellation in
// a + d when a == 0. Levels halve the step; the difference between successive
// levels is reported as the error estimate (the rule converges roughly
// quadratically in the number of correct digits, so this is conservative).
template <class F>
QuadratureResult tanh_sinh(F&& f, double a, double b, double tol, int max_levels = 12) {
    using std::numbers::pi;
    if (!(b > a)) throw domain_error("tanh_sinh: need a < b");
    if (!(tol > 0.0)) throw domain_error("tanh_sinh: tol must be > 0");

    constexpr int min_levels = 4;
    // e^{-2 s} < 1e-80 beyond this: node weights are negligible for any
    // integrable endpoint behaviour we care about.
    constexpr double s_max = 92.0;
    const double t_max = std::asinh(2.0 * s_max / pi);
    const double width = b - a;

    std::size_t evals = 0;
    double sum_abs = 0.0;

    auto pair_term = [&](double t) {
        const double s = 0.5 * pi * std::sinh(t);
        const double e = std::exp(-2.0 * s);
        const double d = width * e / (1.0 + e);
        const double w = width * pi * std::cosh(t) * e / ((1.0 + e) * (1.0 + e));
        const double fl = f(a + d);
        const double fr = f(b - d);
        detail::check_value(fl);
        detail::check_value(fr);
        evals += 2;
        sum_abs += w * (std::abs(fl) + std::abs(fr));
        return w * (fl + fr);
    };

    double h = 1.0;
    double fc = f(0.5 * (a + b));
    detail::check_value(fc);
    ++evals;
    double sum = 0.25 * pi * width * fc;
    sum_abs = std::abs(sum);
    for (int k = 1; k <= static_cast<int>(t_max); ++k) sum += pair_term(k);
    double estimate = h * sum;

    double err = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) sum += pair_term(t);
        const double next = h * sum;
        err = std::abs(next - estimate);
        estimate = next;
        const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * h * sum_abs;
        if (level >= min_levels && err <= std::max(tol, roundoff))
            return {estimate, std::max(err, roundoff), evals};
    }
    throw numerical_failure("tanh_sinh: no convergence after " + std::to_string(max_levels) +
                            " levels (last difference " + std::to_string(err) + ")");
}

namespace detail {

// Smallest power-of-two-refined x with tail(x) <= target, then tightened by
// bisection in log space.
inline double truncation_point(const TailBound& tail, double target) {
    double hi = 1.0;
    int doublings = 0;
    while (tail(hi) > target) {
        hi *= 2.0;
        if (++doublings > 60) throw numerical_failure("tail bound never falls below tolerance");
    }
    if (doublings == 0) return hi;
    double lo = 0.5 * hi;
    for (int i = 0; i < 30; ++i) {
        const double mid = std::sqrt(lo * hi);
        (tail(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

// Without an analytic tail bound: march outward in powers of two until the
// integrand is negligible and decaying, and model the remaining tail as a pure
// exponential fitted through f(x) and f(2x). This is an estimate, not a bound.
template <class F>
std::pair<double, double> probe_truncation(F& f, double tol, std::size_t& evals) {
    double x = 1.0;
    double fx = std::abs(f(x));
    ++evals;
    for (int k = 0; k < 60; ++k) {
        const double f2 = std::abs(f(2.0 * x));
        ++evals;
        if (std::isnan(fx) || std::isnan(f2)) throw numerical_failure("integrand returned NaN");
        if (f2 <= fx && fx * x <= 1e-3 * tol) {
            if (f2 == 0.0) return {x, 0.0};
            const double rate = std::log(fx / f2) / x;
            const double tail = rate > 0.0 ? fx / rate : std::numeric_limits<double>::infinity();
            if (tail <= 0.1 * tol) return {x, tail};
        }
        x *= 2.0;
        fx = f2;
    }
    throw numerical_failure("integrand does not decay on (0, inf)");
}

}  // namespace detail

// Integral over (0, inf). If tail_bound is supplied the truncation error is
// bounded rigorously and added to error_estimate; otherwise it is estimated
// from the observed decay.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double tol, const TailBound& tail_bound = {},
                                         int max_levels = 14) {
    if (!(tol > 0.0)) throw domain_error("integrate_semi_infinite: tol must be > 0");
    std::size_t probe_evals = 0;
    double x_max = 0.0, tail = 0.0;
    if (tail_bound) {
        x_max = detail::truncation_point(tail_bound, 0.1 * tol);
        tail = tail_bound(x_max);
    } else {
        std::tie(x_max, tail) = detail::probe_truncation(f, tol, probe_evals);
    }
    // [0, 1] carries the endpoint singularity; beyond that dyadic panels keep
    // slowly decaying tails from starving the region near the origin.
    std::vector<std::pair<double, double>> panels{{0.0, std::min(1.0, x_max)}};
    for (double a = 1.0; a < x_max; a *= 2.0) panels.emplace_back(a, std::min(2.0 * a, x_max));
    const double share = 0.9 * tol / static_cast<double>(panels.size());
    QuadratureResult r;
    for (const auto& [a, b] : panels) {
        const auto part = tanh_sinh(f, a, b, share, max_levels);
        r.value += part.value;
        r.error_estimate += part.error_estimate;
        r.evaluations += part.evaluations;
    }
    r.error_estimate += tail;
    r.evaluations += probe_evals;
    return r;
}

// Adaptive Gauss-Kronrod 7/15 on [a, b]; the interval is first split into
// `initial_panels` equal pieces, then the panel with the largest error
// estimate is bisected until the total estimate is below tol. Works for any
// value type with +, scalar *, and std::abs (double, std::complex<double>).
template <class F>
auto integrate_interval(F&& f, double a, double b, double tol, int initial_panels = 1,
                        int max_panels = 4000) {
    using T = std::decay_t<decltype(f(a))>;
    static constexpr std::array<double, 8> xgk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr std::array<double, 8> wgk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    struct Panel {
        double lo, hi;
        T value;
        double error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };

    if (!(b > a)) throw domain_error("integrate_interval: need a < b");
    if (initial_panels < 1) initial_panels = 1;

    std::size_t evals = 0;
    auto gk15 = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
        const T fc = f(c);
        detail::check_value(fc);
        T kron = fc * wgk[7];
        T gauss = fc * wg[3];
        for (int i = 0; i < 7; ++i) {
            const T f1 = f(c - r * xgk[i]);
            const T f2 = f(c + r * xgk[i]);
            detail::check_value(f1);
            detail::check_value(f2);
            kron += (f1 + f2) * wgk[i];
            if (i % 2 == 1) gauss += (f1 + f2) * wg[i / 2];
        }
        evals += 15;
        return Panel{lo, hi, kron * r, std::abs((kron - gauss) * r)};
    };

    std::priority_queue<Panel> panels;
    T total{};
    double total_err = 0.0;
    const double step = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + i * step;
        const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * step;
        auto p = gk15(lo, hi);
        total += p.value;
        total_err += p.error;
        panels.push(p);
    }
    int count = initial_panels;
    while (total_err > tol) {
        if (count >= max_panels)
            throw numerical_failure("integrate_interval: panel budget exhausted (error " +
                                    std::to_string(total_err) + ")");
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        auto left = gk15(worst.lo, mid);
        auto right = gk15(mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
        // Error estimates below round-off cannot be driven down further.
        if (worst.error <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(worst.value) &&
            left.error + right.error >= worst.error)
            break;
    }
    struct Result {
        T value;
        double error_estimate;
        std::size_t evaluations;
    };
    return Result{total, total_err, evals};
}

}  // namespace rotring::numerics
