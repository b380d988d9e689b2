#pragma once

// Bloch-mode spectrum of a massless scalar on a ring rotating with rim speed
// beta, coupled to a periodic delta wall of strength lambda_hat, in the
// co-rotating frame. Frequencies are alpha = omega R / c.
//
// Mode functions are superpositions of a right mover e^{i k+ s} and a left
// mover e^{i k- s} with Doppler-shifted wavenumbers
//     k+ = alpha / (1 - beta),   k- = -alpha / (1 + beta),
// on the open interval 0 < s < 2 pi. Periodicity and the derivative jump at
// the wall are a 2x2 homogeneous system for the two amplitudes; the secular
// function below is (up to a constant) its determinant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "rotring/errors.hpp"
#include "rotring/numerics/quadrature.hpp"
#include "rotring/numerics/roots.hpp"
#include "rotring/params.hpp"

namespace rotring {

using cplx = std::complex<double>;

namespace detail {

inline void require_subluminal(const ModelPoint& p) {
    if (!(std::abs(p.beta) < 1.0)) throw domain_error("this operation requires |beta| < 1");
    if (std::isnan(p.lambda_hat) || p.lambda_hat < 0.0) throw domain_error("lambda_hat must be >= 0");
}

// G(alpha) / alpha. Same zeros as G on alpha > 0, no zero at alpha = 0 when
// lambda_hat > 0, and O(1) amplitude at large alpha.
inline double reduced_secular(double alpha, const ModelPoint& p) {
    using std::numbers::pi;
    const double b = p.beta, d = 1.0 - b * b;
    const double kappa = 2.0 * pi / d;
    const double s1 = std::sin(pi * alpha / (1.0 - b));
    const double s2 = std::sin(pi * alpha / (1.0 + b));
    const double sinc = (alpha == 0.0) ? kappa : std::sin(kappa * alpha) / alpha;
    return s1 * s2 - 0.25 * p.lambda_hat * sinc;
}

inline double reduced_secular_derivative(double alpha, const ModelPoint& p) {
    using std::numbers::pi;
    const double b = p.beta, d = 1.0 - b * b;
    const double kappa = 2.0 * pi / d;
    const double u1 = pi / (1.0 - b), u2 = pi / (1.0 + b);
    const double ds = u1 * std::cos(u1 * alpha) * std::sin(u2 * alpha) +
                      u2 * std::sin(u1 * alpha) * std::cos(u2 * alpha);
    double dsinc = 0.0;
    if (alpha != 0.0) {
        const double x = kappa * alpha;
        dsinc = (x * std::cos(x) - std::sin(x)) / (alpha * alpha);
    }
    return ds - 0.25 * p.lambda_hat * dsinc;
}

}  // namespace detail

// G(alpha) = alpha sin(pi alpha/(1-beta)) sin(pi alpha/(1+beta))
//            - (lambda_hat/4) sin(2 pi alpha/(1-beta^2)).
// Entire in alpha; its positive zeros are the mode frequencies.
inline double secular_value(double alpha, const ModelPoint& p) {
    detail::require_subluminal(p);
    if (p.dirichlet()) throw domain_error("secular_value: lambda_hat must be finite");
    return alpha * detail::reduced_secular(alpha, p);
}

// Residual tolerance for |G(alpha)| at a computed root.
inline double secular_tolerance(double alpha, const ModelPoint& p) {
    return 1e-9 * (1.0 + std::abs(alpha) + 0.25 * p.lambda_hat) / (1.0 - p.beta * p.beta);
}

struct ModeSpectrum {
    ModelPoint point;
    std::vector<double> alphas;       // ascending, > 0
    std::vector<bool> degenerate;     // member of an (exactly or nearly) degenerate pair
    double alpha_max = 0.0;

    std::size_t count_below(double a) const {
        return static_cast<std::size_t>(
            std::upper_bound(alphas.begin(), alphas.end(), a) - alphas.begin());
    }
};

// Deviation of the mode count from the asymptotic density 1/(1-beta) + 1/(1+beta).
inline double mode_count_defect(const ModeSpectrum& s) {
    const double expected = 2.0 * s.alpha_max / (1.0 - s.point.beta * s.point.beta);
    return std::abs(static_cast<double>(s.count_below(s.alpha_max)) - expected);
}

struct SpectrumOptions {
    // Grid spacing for the sign scan as a fraction of 1 - |beta|, the
    // smallest asymptotic spacing between Doppler-shifted free modes.
    double grid_fraction = 1.0 / 20.0;
    double root_tol = 1e-15;
    // Pairs closer than this (relative) are flagged degenerate.
    double degeneracy_tol = 1e-9;
};

// All roots of the secular equation in (0, alpha_max], ascending, with
// multiplicity. Double roots (no sign change) are located as extrema of the
// reduced secular function at which it vanishes.
inline ModeSpectrum mode_frequencies(const ModelPoint& p, double alpha_max,
                                     const SpectrumOptions& opt = {}) {
    detail::require_subluminal(p);
    if (!(alpha_max > 0.0) || !std::isfinite(alpha_max))
        throw domain_error("alpha_max must be finite and > 0");

    ModeSpectrum out;
    out.point = p;
    out.alpha_max = alpha_max;
    const double slack = 1e-9 * std::max(1.0, alpha_max);

    if (p.dirichlet()) {
        const double spacing = 0.5 * (1.0 - p.beta * p.beta);
        for (int m = 1; m * spacing <= alpha_max + slack; ++m) out.alphas.push_back(m * spacing);
        out.degenerate.assign(out.alphas.size(), false);
        return out;
    }

    const double step = opt.grid_fraction * (1.0 - std::abs(p.beta));
    auto H = [&](double a) { return detail::reduced_secular(a, p); };
    auto dH = [&](double a) { return detail::reduced_secular_derivative(a, p); };

    // With lambda_hat > 0 the reduced function is strictly negative at 0 and
    // the lowest (lifted zero) mode may sit arbitrarily close to 0. At
    // lambda_hat = 0 nothing lies below 1 - |beta|.
    const double lo = p.lambda_hat > 0.0 ? 0.0 : step;
    const double hi = alpha_max + step;
    const auto scan = numerics::bracket_roots(H, lo, hi, step);

    std::vector<std::pair<double, bool>> roots;  // (alpha, from double root)
    auto refine = [&](double a, double b) {
        try {
            return numerics::refine_root(H, numerics::Bracket{a, b, H(a), H(b)}, opt.root_tol);
        } catch (const numerical_failure& e) {
            throw numerical_failure(std::string("secular root refinement failed: ") + e.what());
        }
    };

    for (const auto& br : scan.brackets) roots.emplace_back(refine(br.lo, br.hi), false);

    for (const auto& t : scan.tangencies) {
        if (t.lo == t.hi) {
            if (t.f == 0.0) roots.emplace_back(t.x, false);
            continue;
        }
        if (t.f == 0.0) {
            roots.emplace_back(t.x, true);
            roots.emplace_back(t.x, true);
            continue;
        }
        const double d_lo = dH(t.lo), d_mid = dH(t.x), d_hi = dH(t.hi);
        numerics::Bracket ext;
        if (d_lo * d_mid <= 0.0)
            ext = {t.lo, t.x, d_lo, d_mid};
        else if (d_mid * d_hi <= 0.0)
            ext = {t.x, t.hi, d_mid, d_hi};
        else
            continue;
        const double x_ext = (ext.f_lo == 0.0)   ? ext.lo
                             : (ext.f_hi == 0.0) ? ext.hi
                                                 : numerics::refine_root(dH, ext, opt.root_tol);
        const double h_ext = H(x_ext);
        const double scale = 1.0 + 0.25 * p.lambda_hat / std::max(x_ext, 1e-300);
        // Round-off in the reduced function near a coincidence is ~1e-22;
        // pairs split by more than ~1e-9 are resolved as two simple roots.
        if (std::abs(h_ext) <= 1e-18 * scale) {
            roots.emplace_back(x_ext, true);
            roots.emplace_back(x_ext, true);
        } else if ((h_ext > 0.0) != (t.f > 0.0)) {
            roots.emplace_back(refine(t.lo, x_ext), false);
            roots.emplace_back(refine(x_ext, t.hi), false);
        }
    }

    std::sort(roots.begin(), roots.end());
    for (const auto& [a, dbl] : roots) {
        if (a <= 0.0 || a > alpha_max + slack) continue;
        out.alphas.push_back(a);
        out.degenerate.push_back(dbl);
    }
    for (std::size_t k = 0; k + 1 < out.alphas.size(); ++k) {
        const double gap = out.alphas[k + 1] - out.alphas[k];
        if (gap <= opt.degeneracy_tol * std::max(1.0, out.alphas[k]))
            out.degenerate[k] = out.degenerate[k + 1] = true;
    }
    return out;
}

// A Bloch mode u(s) = N (a e^{i k+ s} + b e^{i k- s}) on 0 <= s <= 2 pi.
// value(2 pi) is the limit from inside the interval, i.e. u(2 pi - 0).
class ModeFunction {
public:
    ModeFunction(double alpha, const ModelPoint& p, cplx right, cplx left, cplx normalization = 1.0)
        : alpha_(alpha),
          point_(p),
          k_right_(alpha / (1.0 - p.beta)),
          k_left_(-alpha / (1.0 + p.beta)),
          right_(right),
          left_(left),
          norm_(normalization) {}

    double alpha() const { return alpha_; }
    const ModelPoint& point() const { return point_; }
    cplx normalization() const { return norm_; }
    double k_right() const { return k_right_; }
    double k_left() const { return k_left_; }
    cplx right_amplitude() const { return norm_ * right_; }
    cplx left_amplitude() const { return norm_ * left_; }

    cplx value(double s) const { return eval(s, 0); }
    cplx derivative(double s) const { return eval(s, 1); }
    cplx second_derivative(double s) const { return eval(s, 2); }

    ModeFunction normalized_by(cplx factor) const {
        return ModeFunction(alpha_, point_, right_, left_, norm_ * factor);
    }

private:
    cplx eval(double s, int order) const {
        using std::numbers::pi;
        if (s < 0.0 || s > 2.0 * pi) s -= 2.0 * pi * std::floor(s / (2.0 * pi));
        const cplx ir(0.0, k_right_), il(0.0, k_left_);
        cplx fr = std::exp(ir * s), fl = std::exp(il * s);
        for (int i = 0; i < order; ++i) {
            fr *= ir;
            fl *= il;
        }
        return norm_ * (right_ * fr + left_ * fl);
    }

    double alpha_;
    ModelPoint point_;
    double k_right_, k_left_;
    cplx right_, left_;
    cplx norm_;
};

// Self inner product  integral_0^{2pi} [2 alpha |u|^2 - 2 i beta conj(u) u'] ds.
inline cplx self_product(const ModeFunction& u, double tol = 1e-13) {
    using std::numbers::pi;
    const double a = u.alpha(), b = u.point().beta;
    auto integrand = [&](double s) {
        const cplx v = u.value(s);
        return 2.0 * a * std::norm(v) - cplx(0.0, 2.0 * b) * std::conj(v) * u.derivative(s);
    };
    const int panels = std::max(4, static_cast<int>(std::ceil(2.0 * (std::abs(u.k_right()) + std::abs(u.k_left())))));
    return numerics::integrate_interval(integrand, 0.0, 2.0 * pi, tol, panels).value;
}

namespace detail {

inline ModeFunction normalize(const ModeFunction& raw) {
    const cplx n = self_product(raw);
    if (!(n.real() > 0.0) || std::abs(n.imag()) > 1e-8 * n.real())
        throw numerical_failure("mode normalization integral is not positive real");
    return raw.normalized_by(1.0 / std::sqrt(n.real()));
}

}  // namespace detail

// Closed-form amplitudes (1 - e^{-2 pi i alpha/(1+beta)}, -(1 - e^{2 pi i alpha/(1-beta)})),
// not normalized and not checked against the secular equation. Vanishes
// identically where both Doppler families have a mode at alpha.
inline ModeFunction closed_form_mode(double alpha, const ModelPoint& p) {
    using std::numbers::pi;
    const cplx A = 1.0 - std::exp(cplx(0.0, -2.0 * pi * alpha / (1.0 + p.beta)));
    const cplx B = 1.0 - std::exp(cplx(0.0, 2.0 * pi * alpha / (1.0 - p.beta)));
    return ModeFunction(alpha, p, A, -B);
}

// Normalized basis of the solution space at alpha: one mode for a simple
// root, the pure right/left movers when the boundary system vanishes
// identically (coincident Doppler modes of the free ring).
inline std::vector<ModeFunction> mode_basis(double alpha, const ModelPoint& p) {
    using std::numbers::pi;
    detail::require_subluminal(p);
    if (p.dirichlet()) return {detail::normalize(ModeFunction(alpha, p, 1.0, -1.0))};

    const double kr = alpha / (1.0 - p.beta), kl = -alpha / (1.0 + p.beta);
    const double mu = p.lambda_hat / (1.0 - p.beta * p.beta);
    const cplx A = 1.0 - std::exp(cplx(0.0, -2.0 * pi * alpha / (1.0 + p.beta)));  // 1 - e^{2 pi i k-}
    const cplx B = 1.0 - std::exp(cplx(0.0, 2.0 * pi * alpha / (1.0 - p.beta)));   // 1 - e^{2 pi i k+}
    // Rows acting on (right, left): periodicity u(0) - u(2pi), jump u'(0) - u'(2pi) - mu u(0).
    const cplx p1 = B, q1 = A;
    const cplx p2 = cplx(0.0, kr) * B - mu, q2 = cplx(0.0, kl) * A - mu;
    const double r1 = std::max(std::abs(p1), std::abs(q1)) / 2.0;
    const double r2 = std::max(std::abs(p2), std::abs(q2)) / (2.0 * (std::abs(kr) + std::abs(kl)) + 2.0 * mu);

    if (std::max(r1, r2) <= 1e-9) {
        return {detail::normalize(ModeFunction(alpha, p, 1.0, 0.0)),
                detail::normalize(ModeFunction(alpha, p, 0.0, 1.0))};
    }
    const ModeFunction raw = (r1 >= r2) ? ModeFunction(alpha, p, q1, -p1) : ModeFunction(alpha, p, q2, -p2);
    return {detail::normalize(raw)};
}

// Normalized mode at a root of the secular equation.
inline ModeFunction mode_function(double alpha, const ModelPoint& p) {
    detail::require_subluminal(p);
    if (!(alpha > 0.0)) throw domain_error("mode_function: alpha must be > 0");
    if (!p.dirichlet()) {
        const double g = secular_value(alpha, p);
        if (std::abs(g) > secular_tolerance(alpha, p))
            throw domain_error("mode_function: alpha = " + std::to_string(alpha) +
                               " is not a root of the secular equation (residual " +
                               std::to_string(g) + ")");
    }
    return mode_basis(alpha, p).front();
}

// One normalized mode per entry of the spectrum; a degenerate pair whose
// boundary system vanishes gets the two movers as its basis.
inline std::vector<ModeFunction> spectrum_modes(const ModeSpectrum& s) {
    std::vector<ModeFunction> out;
    out.reserve(s.alphas.size());
    for (std::size_t k = 0; k < s.alphas.size(); ++k) {
        if (s.degenerate[k] && k + 1 < s.alphas.size() && s.degenerate[k + 1]) {
            const double a = 0.5 * (s.alphas[k] + s.alphas[k + 1]);
            auto basis = mode_basis(a, s.point);
            if (basis.size() == 2) {
                out.push_back(basis[0]);
                out.push_back(basis[1]);
                ++k;
                continue;
            }
        }
        out.push_back(mode_function(s.alphas[k], s.point));
    }
    return out;
}

struct ModeResiduals {
    double ode = 0.0;          // max |(1-b^2) u'' - 2 i a b u' + a^2 u| over the open interval
    double periodicity = 0.0;  // |u(0) - u(2pi - 0)|
    double jump = 0.0;         // |u'(0) - u'(2pi - 0) - mu u(0)|, or |u(0)| for a Dirichlet wall

    bool passes(double ode_tol, double boundary_tol) const {
        return ode <= ode_tol && periodicity <= boundary_tol && jump <= boundary_tol;
    }
};

inline ModeResiduals mode_residuals(const ModeFunction& u, int grid = 512) {
    using std::numbers::pi;
    const double a = u.alpha(), b = u.point().beta, d = 1.0 - b * b;
    ModeResiduals r;
    for (int j = 0; j < grid; ++j) {
        const double s = 2.0 * pi * (j + 0.5) / grid;
        const cplx res = d * u.second_derivative(s) - cplx(0.0, 2.0 * a * b) * u.derivative(s) + a * a * u.value(s);
        r.ode = std::max(r.ode, std::abs(res));
    }
    const cplx u0 = u.value(0.0), u2 = u.value(2.0 * pi);
    r.periodicity = std::abs(u0 - u2);
    if (u.point().dirichlet()) {
        r.jump = std::abs(u0);
    } else {
        const double mu = u.point().lambda_hat / d;
        r.jump = std::abs(u.derivative(0.0) - u.derivative(2.0 * pi) - mu * u0);
    }
    return r;
}

// The two bilinear relations between modes m and n:
//   first  = integral [(a_m + a_n) conj(u_m) u_n - 2 i beta conj(u_m) u_n'] ds  (= delta_mn)
//   second = integral [(a_n - a_m) u_m u_n - 2 i beta u_m u_n'] ds              (= 0)
inline std::pair<cplx, cplx> inner_products(const ModeFunction& m, const ModeFunction& n, double tol = 1e-12) {
    using std::numbers::pi;
    if (m.point().beta != n.point().beta || m.point().lambda_hat != n.point().lambda_hat)
        throw domain_error("inner_products: modes belong to different model points");
    const double am = m.alpha(), an = n.alpha(), b = m.point().beta;
    const cplx two_i_beta(0.0, 2.0 * b);
    const int panels = std::max(
        4, static_cast<int>(std::ceil(2.0 * (std::abs(m.k_right()) + std::abs(m.k_left()) +
                                             std::abs(n.k_right()) + std::abs(n.k_left())))));
    auto first = [&](double s) {
        const cplx um = std::conj(m.value(s));
        return (am + an) * um * n.value(s) - two_i_beta * um * n.derivative(s);
    };
    auto second = [&](double s) {
        const cplx um = m.value(s);
        return (an - am) * um * n.value(s) - two_i_beta * um * n.derivative(s);
    };
    return {numerics::integrate_interval(first, 0.0, 2.0 * pi, tol, panels).value,
            numerics::integrate_interval(second, 0.0, 2.0 * pi, tol, panels).value};
}

// First-relation Gram matrix of a set of modes (e.g. a degenerate subspace).
inline std::vector<std::vector<cplx>> gram_matrix(const std::vector<ModeFunction>& modes, double tol = 1e-12) {
    std::vector<std::vector<cplx>> g(modes.size(), std::vector<cplx>(modes.size()));
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = 0; j < modes.size(); ++j) g[i][j] = inner_products(modes[i], modes[j], tol).first;
    return g;
}

}  // namespace rotring
