#pragma once

// Casimir energy of the field in the co-rotating frame, in units hbar*c/R.
//
//   E_c = (1/2pi) integral_0^inf ln X(zeta) dzeta,
//   X = 1 - [4 z cosh(2 pi z b/(1-b^2)) + (l - 2 z) e^{-2 pi z/(1-b^2)}]
//           / [(2 z + l) e^{2 pi z/(1-b^2)}]
//
// With p = e^{-2 pi z/(1+b)} and q = e^{-2 pi z/(1-b)} the argument factors as
//
//   X = [2 z (1-p)(1-q) + l (1 - p q)] / (2 z + l)
//
// which is manifestly in (0, 1) and is what casimir_integrand evaluates.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "rotring/errors.hpp"
#include "rotring/numerics/quadrature.hpp"
#include "rotring/params.hpp"

namespace rotring {

struct EnergyResult {
    ModelPoint point;
    double field_energy = 0.0;    // hbar*c/R
    double classical_term = 0.0;  // -I_hat beta^2 / 2
    double total = 0.0;
    double quadrature_error = 0.0;
    std::size_t guard_clamps = 0;
};

inline double casimir_limit_free(double beta) {
    if (!(std::abs(beta) <= 1.0)) throw domain_error("casimir_limit_free: |beta| > 1");
    return -1.0 / 12.0;
}

inline double casimir_limit_dirichlet(double beta) {
    if (!(std::abs(beta) <= 1.0)) throw domain_error("casimir_limit_dirichlet: |beta| > 1");
    return -(1.0 - beta * beta) / 48.0;
}

// Counts log arguments that round-off pushed just above 1 and were clamped.
struct IntegrandGuard {
    std::size_t clamps = 0;
};

inline double casimir_integrand(double zeta, const ModelPoint& p, IntegrandGuard* guard = nullptr) {
    using std::numbers::pi;
    if (!(zeta > 0.0)) throw domain_error("casimir_integrand: zeta must be > 0");
    if (!(std::abs(p.beta) < 1.0)) throw domain_error("casimir_integrand: |beta| must be < 1");
    const double b = p.beta, l = p.lambda_hat;
    const double xp = 2.0 * pi * zeta / (1.0 + b);
    const double xq = 2.0 * pi * zeta / (1.0 - b);

    if (std::isinf(l)) return std::log(-std::expm1(-(xp + xq)));

    const double one_minus_p = -std::expm1(-xp);
    const double one_minus_q = -std::expm1(-xq);
    const double one_minus_pq = -std::expm1(-(xp + xq));
    const double z2 = 2.0 * zeta;

    double log_x;
    if (l == 0.0) {
        log_x = std::log(one_minus_p) + std::log(one_minus_q);
    } else {
        // Deficit 1 - X; small for large zeta, where log1p keeps full precision.
        const double pp = std::exp(-xp), qq = std::exp(-xq);
        const double deficit = (z2 * (pp + qq - pp * qq) + l * pp * qq) / (z2 + l);
        if (deficit < 0.5)
            log_x = std::log1p(-deficit);
        else
            log_x = std::log(z2 * one_minus_p * one_minus_q + l * one_minus_pq) - std::log(z2 + l);
    }
    if (std::isnan(log_x)) return log_x;
    if (log_x > 0.0) {
        // X in (1, 1 + 1e-12]: round-off; clamp to 1 - 1e-16. Anything larger
        // means the parameters are corrupt.
        if (log_x > 1e-12) return std::numeric_limits<double>::quiet_NaN();
        if (guard) ++guard->clamps;
        return std::log1p(-1e-16);
    }
    return log_x;
}

namespace detail {

// integral_Z^inf |ln X| <= integral_Z^inf -ln(1 - 2 e^{-c z}),  c = 2 pi/(1+|b|),
// since 1 - X <= p + q <= 2 e^{-c z}.
inline double casimir_tail_bound(double z, double beta) {
    using std::numbers::pi;
    const double c = 2.0 * pi / (1.0 + std::abs(beta));
    const double e = 2.0 * std::exp(-c * z);
    if (e >= 0.5) return std::numeric_limits<double>::infinity();
    return e / (c * (1.0 - e));
}

}  // namespace detail

// Field part of the co-rotating energy. lambda_hat = inf returns the
// closed-form Dirichlet result.
inline EnergyResult casimir_energy_corotating(const ModelPoint& p, double tol = 1e-10) {
    using std::numbers::pi;
    if (!(std::abs(p.beta) < 1.0)) throw domain_error("casimir energy requires |beta| < 1");
    if (std::isnan(p.lambda_hat) || p.lambda_hat < 0.0) throw domain_error("lambda_hat must be >= 0");
    EnergyResult r;
    r.point = p;
    if (p.dirichlet()) {
        r.field_energy = casimir_limit_dirichlet(p.beta);
    } else {
        IntegrandGuard guard;
        auto f = [&](double z) { return casimir_integrand(z, p, &guard); };
        const double beta = p.beta;
        auto q = numerics::integrate_semi_infinite(
            f, 2.0 * pi * tol, [beta](double z) { return detail::casimir_tail_bound(z, beta); });
        r.field_energy = q.value / (2.0 * pi);
        r.quadrature_error = q.error_estimate / (2.0 * pi);
        r.guard_clamps = guard.clamps;
    }
    r.total = r.field_energy;
    return r;
}

// Field energy plus the classical term -I_hat beta^2 / 2 of the collective coordinate.
inline EnergyResult corotating_total_energy(const ModelPoint& p, double inertia_hat, double tol = 1e-10) {
    if (!(inertia_hat >= 0.0) || !std::isfinite(inertia_hat)) throw domain_error("inertia_hat must be >= 0");
    EnergyResult r = casimir_energy_corotating(p, tol);
    r.classical_term = -0.5 * inertia_hat * p.beta * p.beta;
    r.total = r.field_energy + r.classical_term;
    return r;
}

}  // namespace rotring
