#pragma once

// Zero-point angular momentum and moment of inertia, the stationary-frame
// energy obtained by Legendre transform, and the inversion Omega(ell).
//
// Units: angular momentum hbar, inertia hbar*R/c, energy hbar*c/R. With these
// units d/dOmega becomes d/dbeta, so
//     ell_zp = -dE_c/dbeta,   I_zp = d ell_zp / dbeta,
//     ell_total = I_hat beta + ell_zp,
//     E_s = E_c - I_hat beta^2/2 + ell_total beta.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rotring/energy.hpp"
#include "rotring/errors.hpp"
#include "rotring/numerics/derivative.hpp"
#include "rotring/numerics/quadrature.hpp"
#include "rotring/numerics/roots.hpp"
#include "rotring/params.hpp"

namespace rotring {

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

inline constexpr double kDirichletInertia = -1.0 / 24.0;

// xi * N / D of the zero-point angular momentum integral, with numerator and
// denominator multiplied by 2 e^{-2 pi xi} so nothing overflows:
//   N = 2 xi (1-b^2) [(1+b)^2 e^{-s(1+b)} - (1-b)^2 e^{-s(1-b)} - 4 b e^{-2s}] + 4 b l e^{-2s}
//   D = l (1 - e^{-2s}) + 2 xi (1-b^2) (1 - e^{-s(1-b)}) (1 - e^{-s(1+b)}),   s = 2 pi xi
inline double ell_zp_integrand(double xi, const ModelPoint& p) {
    using std::numbers::pi;
    if (!(xi > 0.0)) throw domain_error("ell_zp_integrand: xi must be > 0");
    if (!(std::abs(p.beta) < 1.0)) throw domain_error("ell_zp_integrand: |beta| must be < 1");
    const double b = p.beta, l = p.lambda_hat, s = 2.0 * pi * xi;
    const double one_minus_e2s = -std::expm1(-2.0 * s);
    if (std::isinf(l)) return 4.0 * b * xi * std::exp(-2.0 * s) / one_minus_e2s;

    const double d = 1.0 - b * b;
    const double up = s * (1.0 + b), um = s * (1.0 - b);
    double bracket;
    if (std::min(up, um) < 1.0) {
        // The constant terms cancel exactly; write each exponential as 1 + expm1.
        bracket = (1.0 + b) * (1.0 + b) * std::expm1(-up) - (1.0 - b) * (1.0 - b) * std::expm1(-um) -
                  4.0 * b * std::expm1(-2.0 * s);
    } else {
        bracket = (1.0 + b) * (1.0 + b) * std::exp(-up) - (1.0 - b) * (1.0 - b) * std::exp(-um) -
                  4.0 * b * std::exp(-2.0 * s);
    }
    const double num = 2.0 * xi * d * bracket + 4.0 * b * l * std::exp(-2.0 * s);
    const double den = l * one_minus_e2s + 2.0 * xi * d * std::expm1(-um) * std::expm1(-up);
    return xi * num / den;
}

namespace detail {

// |integrand| <= 8 xi e^{-c xi} / g(xi), c = 2 pi (1-|b|), g = (1 - e^{-c xi})^2.
inline double ell_tail_bound(double x, double beta) {
    using std::numbers::pi;
    const double c = 2.0 * pi * (1.0 - std::abs(beta));
    const double g = std::pow(-std::expm1(-c * x), 2);
    return 8.0 * std::exp(-c * x) * (x / c + 1.0 / (c * c)) / g;
}

inline void require_coupling(double lambda_hat) {
    if (std::isnan(lambda_hat) || lambda_hat < 0.0) throw domain_error("lambda_hat must be >= 0");
}

}  // namespace detail

// Zero-point angular momentum  -integral_0^inf ell_zp_integrand d xi,  units hbar.
inline Estimate ell_zp(const ModelPoint& p, double tol = 1e-10) {
    if (!(std::abs(p.beta) < 1.0)) throw domain_error("ell_zp requires |beta| < 1");
    detail::require_coupling(p.lambda_hat);
    if (p.dirichlet()) return {-p.beta / 24.0, 0.0};
    if (p.beta == 0.0) return {0.0, 0.0};
    const double beta = p.beta;
    auto q = numerics::integrate_semi_infinite([&](double x) { return ell_zp_integrand(x, p); }, tol,
                                               [beta](double x) { return detail::ell_tail_bound(x, beta); });
    return {-q.value, q.error_estimate};
}

inline Estimate total_angular_momentum(const ModelPoint& p, double inertia_hat, double tol = 1e-10) {
    const auto zp = ell_zp(p, tol);
    return {inertia_hat * p.beta + zp.value, zp.error};
}

// First differentiation step: stays a safe distance from |beta| = 1.
inline double inertia_step(double beta) { return std::min(1e-3, (1.0 - std::abs(beta)) / 10.0); }

// I_zp = d ell_zp / d beta by Richardson-extrapolated central differences of
// the ell_zp quadrature.
inline Estimate inertia_zp(const ModelPoint& p, double tol = 1e-8) {
    if (!(std::abs(p.beta) < 1.0)) throw domain_error("inertia_zp requires |beta| < 1");
    detail::require_coupling(p.lambda_hat);
    if (p.dirichlet()) return {kDirichletInertia, 0.0};
    const double h0 = inertia_step(p.beta);
    const double quad_tol = std::max(1e-15, 1e-3 * tol * h0);
    auto ell = [&](double b) { return ell_zp(ModelPoint{b, p.lambda_hat}, quad_tol).value; };
    numerics::DerivativeOptions opt;
    opt.initial_step = h0;
    opt.lower = -1.0;
    opt.upper = 1.0;
    const auto d = numerics::derivative(ell, p.beta, tol, opt);
    return {d.value, d.error_estimate};
}

// Independent route: I_zp = -d^2 E_c / d beta^2 from the energy integral.
inline Estimate inertia_zp_from_energy(const ModelPoint& p, double tol = 1e-6) {
    if (!(std::abs(p.beta) < 1.0)) throw domain_error("inertia_zp_from_energy requires |beta| < 1");
    detail::require_coupling(p.lambda_hat);
    if (p.dirichlet()) return {kDirichletInertia, 0.0};
    const double h0 = std::min(1e-2, (1.0 - std::abs(p.beta)) / 10.0);
    auto energy = [&](double b) {
        return casimir_energy_corotating(ModelPoint{b, p.lambda_hat}, 1e-15).field_energy;
    };
    numerics::DerivativeOptions opt;
    opt.initial_step = h0;
    opt.lower = -1.0;
    opt.upper = 1.0;
    const auto d = numerics::second_derivative(energy, p.beta, tol, opt);
    return {-d.value, d.error_estimate};
}

namespace detail {

// For xi >= 1 both light-speed integrands are dominated by C xi e^{-pi xi}.
inline double light_speed_tail(double x, double coefficient) {
    using std::numbers::pi;
    if (x < 1.0) return std::numeric_limits<double>::infinity();
    return coefficient / (1.0 - std::exp(-pi)) * std::exp(-pi * x) * (x / pi + 1.0 / (pi * pi));
}

// lambda + 2 xi (1 - e^{-pi xi})
inline double light_speed_denominator(double xi, double lambda_hat) {
    using std::numbers::pi;
    return lambda_hat - 2.0 * xi * std::expm1(-pi * xi);
}

}  // namespace detail

// Value of I_zp at |beta| = 1, the lower bound of I_zp over the accessible
// region:  -(1/24) (1 - integral 6 l xi^2 e^{-pi xi} / (l + 2 xi - 2 xi e^{-pi xi})^2).
inline Estimate izp_lightspeed_bound(double lambda_hat, double tol = 1e-12) {
    using std::numbers::pi;
    detail::require_coupling(lambda_hat);
    if (std::isinf(lambda_hat) || lambda_hat == 0.0) return {kDirichletInertia, 0.0};
    auto f = [&](double x) {
        const double den = detail::light_speed_denominator(x, lambda_hat);
        return 6.0 * lambda_hat * x * x * std::exp(-pi * x) / (den * den);
    };
    auto q = numerics::integrate_semi_infinite(f, 24.0 * tol,
                                               [](double x) { return detail::light_speed_tail(x, 0.75); });
    return {-(1.0 - q.value) / 24.0, q.error_estimate / 24.0};
}

// |ell_zp(1)| = (1/24) (1 - integral 12 xi^2 / ((l + 2 xi) e^{pi xi} - 2 xi)),
// the bound on |ell_zp| over |beta| <= 1.
inline Estimate ell_zp_bound(double lambda_hat, double tol = 1e-12) {
    using std::numbers::pi;
    detail::require_coupling(lambda_hat);
    if (std::isinf(lambda_hat)) return {1.0 / 24.0, 0.0};
    auto f = [&](double x) {
        return 12.0 * x * x * std::exp(-pi * x) / detail::light_speed_denominator(x, lambda_hat);
    };
    auto q = numerics::integrate_semi_infinite(f, 24.0 * tol,
                                               [](double x) { return detail::light_speed_tail(x, 6.0); });
    return {(1.0 - q.value) / 24.0, q.error_estimate / 24.0};
}

struct StationaryEnergy {
    double corotating_total = 0.0;  // E_c - I_hat beta^2/2
    double ell_total = 0.0;
    double value = 0.0;             // corotating_total + ell_total * beta
    double error = 0.0;
};

inline StationaryEnergy stationary_energy(const ModelPoint& p, double inertia_hat, double tol = 1e-10) {
    const auto ec = corotating_total_energy(p, inertia_hat, tol);
    const auto ell = total_angular_momentum(p, inertia_hat, tol);
    StationaryEnergy s;
    s.corotating_total = ec.total;
    s.ell_total = ell.value;
    s.value = ec.total + ell.value * p.beta;
    s.error = ec.quadrature_error + std::abs(p.beta) * ell.error;
    return s;
}

struct AngularLedger {
    ModelPoint point;
    double ell_zp = 0.0;
    double ell_total = 0.0;
    double inertia_zp = 0.0;
    double inertia_total = 0.0;
    double stationary_energy = 0.0;
    double ell_error = 0.0;
    double inertia_error = 0.0;
    double energy_error = 0.0;
};

inline AngularLedger angular_ledger(const ModelPoint& p, double inertia_hat, double tol = 1e-10) {
    AngularLedger l;
    l.point = p;
    const auto zp = ell_zp(p, tol);
    const auto izp = inertia_zp(p, std::max(tol, 1e-9));
    const auto es = stationary_energy(p, inertia_hat, tol);
    l.ell_zp = zp.value;
    l.ell_error = zp.error;
    l.ell_total = inertia_hat * p.beta + zp.value;
    l.inertia_zp = izp.value;
    l.inertia_error = izp.error;
    l.inertia_total = inertia_hat + izp.value;
    l.stationary_energy = es.value;
    l.energy_error = es.error;
    return l;
}

struct InversionOptions {
    // Largest |beta| searched; ell_zp quadrature tails grow like 1/(1-|beta|).
    double beta_cap = 0.999;
    int monotonicity_samples = 41;
};

// The beta solving I_hat beta + ell_zp(beta) = ell_total. Monotonicity of
// ell(beta) is checked on a grid first; a non-increasing step is reported as a
// model violation instead of returning an arbitrary root.
inline double omega_of_ell(double ell_total, double lambda_hat, double inertia_hat, double tol = 1e-12,
                           const InversionOptions& opt = {}) {
    detail::require_coupling(lambda_hat);
    if (!std::isfinite(ell_total)) throw domain_error("ell_total must be finite");
    if (!(inertia_hat >= 0.0) || !std::isfinite(inertia_hat)) throw domain_error("inertia_hat must be >= 0");

    if (std::isinf(lambda_hat)) {
        const double slope = inertia_hat + kDirichletInertia;
        if (!(slope > 0.0))
            throw model_violation("total angular momentum is not increasing in the rotation speed "
                                  "(I_hat + I_zp = " + std::to_string(slope) + " <= 0)");
        const double beta = ell_total / slope;
        if (!(std::abs(beta) < 1.0)) throw domain_error("ell_total outside the attainable range |beta| < 1");
        return beta;
    }

    const double quad_tol = 1e-13;
    auto ell = [&](double b) { return inertia_hat * b + ell_zp(ModelPoint{b, lambda_hat}, quad_tol).value; };

    const int n = std::max(3, opt.monotonicity_samples | 1);
    std::vector<double> bs(n), ls(n);
    for (int j = 0; j < n; ++j) {
        bs[j] = j == (n - 1) / 2 ? 0.0 : -opt.beta_cap + 2.0 * opt.beta_cap * j / (n - 1);
        ls[j] = ell(bs[j]);
    }
    for (int j = 0; j + 1 < n; ++j) {
        if (!(ls[j + 1] > ls[j]))
            throw model_violation("total angular momentum is not increasing in beta between " +
                                  std::to_string(bs[j]) + " and " + std::to_string(bs[j + 1]));
    }
    if (!(ell_total > ls.front() && ell_total < ls.back()))
        throw domain_error("ell_total = " + std::to_string(ell_total) + " outside the attainable range (" +
                           std::to_string(ls.front()) + ", " + std::to_string(ls.back()) + ")");
    for (int j = 0; j + 1 < n; ++j) {
        if (ls[j] == ell_total) return bs[j];
        if (ls[j] < ell_total && ell_total < ls[j + 1]) {
            auto f = [&](double b) { return ell(b) - ell_total; };
            return numerics::refine_root(f, numerics::Bracket{bs[j], bs[j + 1], ls[j] - ell_total, ls[j + 1] - ell_total},
                                         tol);
        }
    }
    throw numerical_failure("omega_of_ell: no bracket found");
}

// I_tot(beta) = I_tot(beta0) + (I_zp(beta) - I_zp(beta0)). |beta0| = 1 uses the
// light-speed value of I_zp.
inline double renormalized_inertia(double beta, double beta0, double lambda_hat, double measured_total_at_beta0,
                                   double tol = 1e-8) {
    detail::require_coupling(lambda_hat);
    if (!(std::abs(beta) < 1.0)) throw domain_error("renormalized_inertia: |beta| must be < 1");
    if (!(std::abs(beta0) <= 1.0)) throw domain_error("renormalized_inertia: |beta0| must be <= 1");
    if (beta == beta0) return measured_total_at_beta0;
    const double izp = inertia_zp(ModelPoint{beta, lambda_hat}, tol).value;
    const double izp0 = std::abs(beta0) == 1.0 ? izp_lightspeed_bound(lambda_hat).value
                                               : inertia_zp(ModelPoint{beta0, lambda_hat}, tol).value;
    return measured_total_at_beta0 + (izp - izp0);
}

// 41 uniform points on [-0.95, 0.95].
inline std::vector<double> default_beta_grid() {
    std::vector<double> g(41);
    for (int j = 0; j < 41; ++j) g[j] = -0.95 + 0.0475 * j;
    g[20] = 0.0;
    return g;
}

enum class GroundState { non_rotating, degenerate, semiclassical_violation };

inline const char* to_string(GroundState s) {
    switch (s) {
        case GroundState::non_rotating: return "non-rotating";
        case GroundState::degenerate: return "degenerate";
        case GroundState::semiclassical_violation: return "semiclassical-violation";
    }
    return "";
}

struct GroundStateReport {
    double lambda_hat = 0.0;
    double inertia_hat = 0.0;
    std::vector<double> betas;
    std::vector<double> inertia_zp;       // per grid point
    double min_inertia_total = 0.0;
    double argmin_beta = 0.0;
    double ell_zp_bound = 0.0;
    // I dOmega/dell >= 1 - |ell_zp| bound for a change of one quantum.
    double response_lower_bound = 0.0;
    GroundState status = GroundState::non_rotating;
};

inline GroundStateReport ground_state_report(double lambda_hat, double inertia_hat,
                                             const std::vector<double>& beta_grid = default_beta_grid(),
                                             double tol = 1e-8) {
    detail::require_coupling(lambda_hat);
    if (!(inertia_hat >= 0.0) || !std::isfinite(inertia_hat)) throw domain_error("inertia_hat must be >= 0");
    if (beta_grid.empty()) throw domain_error("ground_state_report: empty beta grid");
    GroundStateReport r;
    r.lambda_hat = lambda_hat;
    r.inertia_hat = inertia_hat;
    r.betas = beta_grid;
    r.min_inertia_total = std::numeric_limits<double>::infinity();
    for (double b : beta_grid) {
        if (!(std::abs(b) < 1.0)) throw domain_error("ground_state_report: grid must lie in (-1, 1)");
        const double izp = inertia_zp(ModelPoint{b, lambda_hat}, tol).value;
        r.inertia_zp.push_back(izp);
        if (inertia_hat + izp < r.min_inertia_total) {
            r.min_inertia_total = inertia_hat + izp;
            r.argmin_beta = b;
        }
    }
    r.ell_zp_bound = ell_zp_bound(lambda_hat).value;
    r.response_lower_bound = 1.0 - r.ell_zp_bound;
    if (inertia_hat == 0.0 && lambda_hat == 0.0)
        r.status = GroundState::degenerate;
    else if (r.min_inertia_total > 0.0)
        r.status = GroundState::non_rotating;
    else
        r.status = GroundState::semiclassical_violation;
    return r;
}

}  // namespace rotring
