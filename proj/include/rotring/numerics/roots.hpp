#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rotring/errors.hpp"

namespace rotring::numerics {

// Interval [lo, hi] on which f changes sign.
struct Bracket {
    double lo = 0.0, hi = 0.0;
    double f_lo = 0.0, f_hi = 0.0;
};

// Sample at which |f| has a local minimum without a sign change on either
// side: a candidate double root or a close pair of roots between samples.
// [lo, hi] are the neighbouring samples.
struct Tangency {
    double x = 0.0, f = 0.0;
    double lo = 0.0, hi = 0.0;
};

struct BracketScan {
    std::vector<Bracket> brackets;
    std::vector<Tangency> tangencies;
};

// Samples f on a uniform grid over [lo, hi] with spacing at most `step` and
// returns every sign change plus the near-tangent candidates. A local minimum
// of |f| is flagged when it is at most `tangency_ratio` times the larger of
// its two neighbours. Samples that are exactly zero count as roots: an interior
// zero between opposite signs becomes a bracket over both neighbours, any
// other zero is reported as a tangency.
template <class F>
BracketScan bracket_roots(F&& f, double lo, double hi, double step, double tangency_ratio = 0.5) {
    if (!(step > 0.0)) throw domain_error("bracket_roots: step must be > 0");
    if (!(lo < hi)) throw domain_error("bracket_roots: need lo < hi");

    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    std::vector<double> xs(n + 1), fs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        xs[i] = (i == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        fs[i] = f(xs[i]);
        if (std::isnan(fs[i]))
            throw numerical_failure("bracket_roots: f is NaN at x = " + std::to_string(xs[i]));
    }

    BracketScan scan;
    for (std::size_t i = 0; i + 1 <= n; ++i) {
        if (fs[i] * fs[i + 1] < 0.0) scan.brackets.push_back({xs[i], xs[i + 1], fs[i], fs[i + 1]});
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (fs[i] != 0.0) continue;
        const bool interior = i > 0 && i < n;
        if (interior && fs[i - 1] * fs[i + 1] < 0.0) {
            scan.brackets.push_back({xs[i - 1], xs[i + 1], fs[i - 1], fs[i + 1]});
        } else {
            scan.tangencies.push_back({xs[i], 0.0, xs[i > 0 ? i - 1 : i], xs[i < n ? i + 1 : i]});
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double a = fs[i - 1], b = fs[i], c = fs[i + 1];
        if (b == 0.0) continue;
        const bool same_sign = (a > 0.0 && b > 0.0 && c > 0.0) || (a < 0.0 && b < 0.0 && c < 0.0);
        if (!same_sign) continue;
        const double ab = std::abs(a), bb = std::abs(b), cb = std::abs(c);
        if (bb < ab && bb <= cb && bb <= tangency_ratio * std::max(ab, cb))
            scan.tangencies.push_back({xs[i], b, xs[i - 1], xs[i + 1]});
    }
    std::sort(scan.brackets.begin(), scan.brackets.end(),
              [](const Bracket& p, const Bracket& q) { return p.lo < q.lo; });
    std::sort(scan.tangencies.begin(), scan.tangencies.end(),
              [](const Tangency& p, const Tangency& q) { return p.x < q.x; });
    return scan;
}

// Brent's method: inverse quadratic / secant steps, accepted only while they
// shrink the bracket fast enough, otherwise bisection. Returns a point whose
// enclosing bracket is no wider than tol (plus a few ulps of the root).
template <class F>
double refine_root(F&& f, const Bracket& bracket, double tol, int max_iterations = 300) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double a = bracket.lo, b = bracket.hi, fa = bracket.f_lo, fb = bracket.f_hi;
    if (!(a < b)) throw domain_error("refine_root: bracket needs lo < hi");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw domain_error("refine_root: f does not change sign on the bracket");
    if (!(tol > 0.0)) tol = 0.0;

    double c = b, fc = fb, d = b - a, e = d;
    for (int iter = 0; iter < max_iterations; ++iter) {
        if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
        if (std::isnan(fb)) throw numerical_failure("refine_root: f is NaN at x = " + std::to_string(b));
    }
    throw numerical_failure("refine_root: iteration budget exhausted on [" +
                            std::to_string(bracket.lo) + ", " + std::to_string(bracket.hi) + "]");
}

// Convenience: evaluate the end values and refine.
template <class F>
double refine_root(F&& f, double lo, double hi, double tol) {
    return refine_root(f, Bracket{lo, hi, f(lo), f(hi)}, tol);
}

}  // namespace rotring::numerics
