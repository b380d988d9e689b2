#pragma once

// Self-verification: the module invariants as named checks, each with the
// measured quantity and the tolerance it is held to.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rotring/energy.hpp"
#include "rotring/errors.hpp"
#include "rotring/numerics/derivative.hpp"
#include "rotring/numerics/quadrature.hpp"
#include "rotring/rotation.hpp"
#include "rotring/spectrum.hpp"

namespace rotring {

enum class VerifyLevel { fast, full };

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double required = 0.0;
    bool at_least = false;  // measured >= required instead of measured <= required
    bool passed = false;
};

inline CheckResult make_check(std::string name, double measured, double required, bool at_least = false) {
    CheckResult c{std::move(name), measured, required, at_least, false};
    c.passed = at_least ? measured >= required : measured <= required;
    return c;
}

// The two integrands behind the consistency oracle. Tests swap one for a
// deliberately broken version to see the oracle fail.
struct Integrands {
    std::function<double(double, const ModelPoint&)> ell = ell_zp_integrand;
    std::function<double(double, const ModelPoint&)> energy = [](double z, const ModelPoint& p) {
        return casimir_integrand(z, p);
    };
};

namespace detail {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<double> doppler_multiset(double beta, double alpha_max) {
    std::vector<double> out;
    for (double f : {1.0 - beta, 1.0 + beta})
        for (int m = 1; m * f <= alpha_max + 1e-9 * std::max(1.0, alpha_max); ++m) out.push_back(m * f);
    std::sort(out.begin(), out.end());
    return out;
}

inline double worst(double acc, double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(acc, v); }

}  // namespace detail

// |ell_zp - (-dE_c/dbeta)| maximised over the grid; both sides are built from
// the supplied integrands.
inline double consistency_defect(const std::vector<double>& betas, const std::vector<double>& lambdas,
                                 const Integrands& in = {}) {
    using std::numbers::pi;
    double defect = 0.0;
    for (double l : lambdas) {
        for (double b : betas) {
            const ModelPoint p = make_point(b, l);
            const auto ell = numerics::integrate_semi_infinite(
                [&](double x) { return in.ell(x, p); }, 1e-13,
                [b](double x) { return detail::ell_tail_bound(x, b); });
            auto energy = [&](double bb) {
                const ModelPoint q = make_point(bb, l);
                return numerics::integrate_semi_infinite(
                           [&](double z) { return in.energy(z, q); }, 1e-15,
                           [bb](double z) { return detail::casimir_tail_bound(z, bb); })
                           .value /
                       (2.0 * pi);
            };
            numerics::DerivativeOptions opt;
            opt.initial_step = std::min(1e-2, (1.0 - std::abs(b)) / 10.0);
            opt.lower = -1.0;
            opt.upper = 1.0;
            const auto d = numerics::derivative(energy, b, 1e-10, opt);
            defect = detail::worst(defect, std::abs(-ell.value + d.value));
        }
    }
    return defect;
}

inline std::vector<double> consistency_betas() { return {-0.8, -0.4, -0.1, 0.1, 0.4, 0.8}; }
inline std::vector<double> consistency_lambdas() { return {0.5, 2.0, 10.0, 100.0}; }

inline std::vector<CheckResult> spectrum_checks(VerifyLevel level) {
    std::vector<CheckResult> out;

    {
        double d = 0.0;
        for (double b : {0.0, 0.3, 0.5, 0.8}) {
            const auto s = mode_frequencies(make_point(b, 0.0), 10.0);
            d = detail::worst(d, detail::max_abs_diff(s.alphas, detail::doppler_multiset(b, 10.0)));
        }
        out.push_back(make_check("spectrum: free ring roots = Doppler multiset m(1+-beta)", d, 1e-10));
    }
    {
        double d = 0.0;
        for (double l : {0.0, 0.5, 2.0, 50.0})
            for (double b : {0.1, 0.37, 0.8}) {
                const auto plus = mode_frequencies(make_point(b, l), 10.0);
                const auto minus = mode_frequencies(make_point(-b, l), 10.0);
                d = detail::worst(d, detail::max_abs_diff(plus.alphas, minus.alphas));
            }
        out.push_back(make_check("spectrum: beta -> -beta leaves the spectrum unchanged", d, 1e-8));
    }
    {
        using std::numbers::pi;
        double d = 0.0;
        for (double l : {0.5, 2.0, 50.0}) {
            const auto s = mode_frequencies(make_point(0.0, l), 10.0);
            for (double a : s.alphas) {
                const double to_int = std::abs(a - std::round(a));
                const double tan_res = std::abs(std::tan(pi * a) - l / (2.0 * a)) / (1.0 + l / (2.0 * a));
                d = detail::worst(d, std::min(to_int, tan_res));
            }
        }
        out.push_back(make_check("spectrum: beta=0 roots are integers or solve tan(pi a) = l/(2a)", d, 1e-10));
    }
    {
        double d = 0.0;
        for (double b : {0.0, 0.5, 0.9}) {
            const auto s = mode_frequencies(make_point(b, 1e6), 3.0);
            if (s.alphas.size() < 5) {
                d = std::numeric_limits<double>::infinity();
                continue;
            }
            for (int m = 1; m <= 5; ++m) {
                const double exact = m * (1.0 - b * b) / 2.0;
                d = detail::worst(d, std::abs(s.alphas[m - 1] - exact) / exact);
            }
        }
        out.push_back(make_check("spectrum: lambda=1e6 first five roots vs m(1-beta^2)/2 (relative)", d, 1e-5));
    }
    {
        // The free zero mode is lifted to sqrt(l/(2 pi)); every other root
        // stays next to a Doppler-shifted free mode.
        const double l = 1e-6;
        double d = 0.0;
        for (double b : {0.0, 0.3, 0.6}) {
            // 5.9 stays clear of every free root, which the coupling shifts upward.
            const auto s = mode_frequencies(make_point(b, l), 5.9);
            const auto free = detail::doppler_multiset(b, 5.9);
            if (s.alphas.size() != free.size() + 1) {
                d = std::numeric_limits<double>::infinity();
                continue;
            }
            d = detail::worst(d, std::abs(s.alphas.front() - std::sqrt(l / (2.0 * std::numbers::pi))));
            d = detail::worst(d, detail::max_abs_diff({s.alphas.begin() + 1, s.alphas.end()}, free));
        }
        out.push_back(make_check("spectrum: lambda=1e-6 roots within 1e-5 of the free spectrum", d, 1e-5));
    }
    {
        const double amax = level == VerifyLevel::full ? 50.0 : 20.0;
        double d = 0.0;
        for (double b : {0.0, 0.3, 0.6, 0.9})
            for (double l : {0.0, 1.0, 10.0, 100.0})
                d = detail::worst(d, mode_count_defect(mode_frequencies(make_point(b, l), amax)));
        out.push_back(make_check("spectrum: |#{a <= A} - 2A/(1-beta^2)|, A = " + std::to_string(static_cast<int>(amax)),
                                 d, 2.0));
    }
    {
        double ode = 0.0, boundary = 0.0, norm = 0.0, off = 0.0;
        int count = 0;
        for (double b : {0.0, 0.5})
            for (double l : {0.0, 2.0, 50.0}) {
                const auto s = mode_frequencies(make_point(b, l), 2.0);
                const auto modes = spectrum_modes(s);
                for (std::size_t i = 0; i < modes.size(); ++i) {
                    ++count;
                    const auto r = mode_residuals(modes[i]);
                    ode = detail::worst(ode, r.ode);
                    boundary = detail::worst(boundary, std::max(r.periodicity, r.jump));
                    for (std::size_t j = i; j < modes.size(); ++j) {
                        const auto [first, second] = inner_products(modes[i], modes[j]);
                        if (i == j)
                            norm = detail::worst(norm, std::abs(first - 1.0));
                        else
                            off = detail::worst(off, std::abs(first));
                        off = detail::worst(off, std::abs(second));
                    }
                }
            }
        out.push_back(make_check("modes: ODE residual (" + std::to_string(count) + " modes)", ode, 1e-8));
        out.push_back(make_check("modes: periodicity and jump defects", boundary, 1e-6));
        out.push_back(make_check("modes: |self-normalization - 1|", norm, 1e-6));
        out.push_back(make_check("modes: off-diagonal inner products", off, 1e-6));
    }
    if (level == VerifyLevel::full) {
        // Error of the first five roots must shrink monotonically and like 1/lambda.
        double rate = 0.0;
        bool monotone = true;
        for (double b : {0.0, 0.5}) {
            std::vector<std::vector<double>> err;
            for (int k = 2; k <= 6; ++k) {
                const auto s = mode_frequencies(make_point(b, std::pow(10.0, k)), 3.0);
                std::vector<double> e;
                for (int m = 1; m <= 5; ++m) e.push_back(std::abs(s.alphas.at(m - 1) - m * (1.0 - b * b) / 2.0));
                err.push_back(e);
            }
            for (int m = 0; m < 5; ++m) {
                // Modes that already vanish at the barrier (e.g. even m at
                // beta = 0) are exact for every lambda; nothing to converge.
                if (err[0][m] <= 1e-13) continue;
                for (std::size_t k = 0; k + 1 < err.size(); ++k) monotone = monotone && err[k + 1][m] < err[k][m];
                rate = detail::worst(rate, std::abs(std::log10(err[3][m] / err[4][m]) - 1.0));
            }
        }
        out.push_back(make_check("spectrum: lambda = 1e2..1e6 roots approach m(1-beta^2)/2 monotonically", monotone ? 0.0 : 1.0, 0.0));
        out.push_back(make_check("spectrum: |log10(err(1e5)/err(1e6)) - 1|", rate, 0.05));
    }
    return out;
}

inline std::vector<CheckResult> energy_checks(VerifyLevel level) {
    std::vector<CheckResult> out;
    auto ec = [](double b, double l) { return casimir_energy_corotating(make_point(b, l)).field_energy; };

    {
        double d = 0.0;
        for (double b : {0.0, 0.3, 0.6, 0.9}) d = detail::worst(d, std::abs(ec(b, 0.0) + 1.0 / 12.0));
        out.push_back(make_check("energy: lambda=0 gives -1/12", d, 1e-8));
    }
    {
        double d = 0.0, rate = 0.0;
        for (double b : {0.0, 0.5, 0.9}) {
            d = detail::worst(d, std::abs(ec(b, 1e6) - casimir_limit_dirichlet(b)));
            const double e4 = std::abs(ec(b, 1e4) - casimir_limit_dirichlet(b));
            const double e5 = std::abs(ec(b, 1e5) - casimir_limit_dirichlet(b));
            const double e6 = std::abs(ec(b, 1e6) - casimir_limit_dirichlet(b));
            rate = detail::worst(rate, std::abs(std::log10(e4 / e5) - 1.0));
            rate = detail::worst(rate, std::abs(std::log10(e5 / e6) - 1.0));
        }
        out.push_back(make_check("energy: lambda=1e6 vs -(1-beta^2)/48", d, 1e-4));
        out.push_back(make_check("energy: O(1/lambda) rate, |log10(err ratio per decade) - 1|", rate, 0.1));
    }
    {
        double d = 0.0;
        for (double b : consistency_betas())
            for (double l : consistency_lambdas()) d = detail::worst(d, std::abs(ec(b, l) - ec(-b, l)));
        out.push_back(make_check("energy: even in beta", d, 1e-8));
    }
    {
        const std::vector<double> ls = {0.0, 0.1, 1.0, 10.0, 100.0, 1e4};
        double drop = -std::numeric_limits<double>::infinity(), outside = drop;
        for (double b : {0.0, 0.5, 0.9}) {
            double prev = -std::numeric_limits<double>::infinity();
            for (double l : ls) {
                const double e = ec(b, l);
                drop = detail::worst(drop, prev - e);
                prev = e;
                outside = detail::worst(outside, casimir_limit_free(b) - e);
                outside = detail::worst(outside, e - casimir_limit_dirichlet(b));
            }
        }
        out.push_back(make_check("energy: nondecreasing in lambda (largest drop)", drop, 1e-10));
        out.push_back(make_check("energy: -1/12 <= E_c <= -(1-beta^2)/48 (largest violation)", outside, 1e-10));
    }
    if (level == VerifyLevel::full) {
        double d = 0.0;
        for (double b : {0.0, 0.5, 0.9}) {
            const auto lim = casimir_energy_corotating(make_point(b, kInfiniteCoupling));
            d = detail::worst(d, std::abs(lim.field_energy - casimir_limit_dirichlet(b)));
            const double analytic = -std::numbers::pi * (1.0 - b * b) / 24.0;
            const auto q = numerics::integrate_semi_infinite(
                [b](double z) { return casimir_integrand(z, make_point(b, kInfiniteCoupling)); }, 1e-12,
                [b](double z) { return detail::casimir_tail_bound(z, b); });
            d = detail::worst(d, std::abs(q.value - analytic));
            const auto q0 = numerics::integrate_semi_infinite(
                [b](double z) { return casimir_integrand(z, make_point(b, 0.0)); }, 1e-12,
                [b](double z) { return detail::casimir_tail_bound(z, b); });
            d = detail::worst(d, std::abs(q0.value + std::numbers::pi / 6.0));
        }
        out.push_back(make_check("energy: limiting integrands give -pi/6 and -pi(1-beta^2)/24", d, 1e-10));

        // Approach to the free value; the rate is measured, shrinking is required.
        double worst_ratio = 0.0;
        for (double b : {0.0, 0.5}) {
            double prev = std::numeric_limits<double>::infinity();
            for (int k = 1; k <= 5; ++k) {
                const double e = std::abs(ec(b, std::pow(10.0, -k)) + 1.0 / 12.0);
                worst_ratio = detail::worst(worst_ratio, e / prev);
                prev = e;
            }
        }
        out.push_back(make_check("energy: lambda -> 0 deviation from -1/12 shrinks per decade (worst ratio)",
                                 worst_ratio, 0.5));
    }
    return out;
}

inline std::vector<CheckResult> rotation_checks(VerifyLevel level, const Integrands& integrands = {}) {
    std::vector<CheckResult> out;
    out.push_back(make_check("rotation: |ell_zp + dE_c/dbeta| on the consistency grid",
                             consistency_defect(consistency_betas(), consistency_lambdas(), integrands), 1e-6));

    {
        auto betas = consistency_betas();
        betas.push_back(-0.95);
        betas.push_back(0.95);
        double violation = -std::numeric_limits<double>::infinity(), odd = 0.0;
        for (double l : consistency_lambdas()) {
            const double bound = ell_zp_bound(l).value;
            violation = detail::worst(violation, bound - 1.0 / 24.0);
            for (double b : betas) {
                const double e = ell_zp(make_point(b, l)).value;
                violation = detail::worst(violation, std::abs(e) - bound);
                odd = detail::worst(odd, std::abs(e + ell_zp(make_point(-b, l)).value));
            }
        }
        out.push_back(make_check("rotation: |ell_zp| <= ell_zp_bound <= 1/24 (largest violation)", violation, 1e-10));
        out.push_back(make_check("rotation: ell_zp odd in beta", odd, 1e-8));
        out.push_back(make_check("rotation: ell_zp_bound(0)", std::abs(ell_zp_bound(0.0).value), 1e-8));
        out.push_back(make_check("rotation: |ell_zp_bound(1e6) - 1/24|", std::abs(ell_zp_bound(1e6).value - 1.0 / 24.0),
                                 1e-4));
    }
    {
        const int n = level == VerifyLevel::full ? 20 : 6;
        const double lowest = -std::numeric_limits<double>::infinity();
        double positive = lowest, rise = lowest, below = lowest, strong = 0.0, even = 0.0;
        for (double l : {0.5, 2.0, 10.0, 100.0, 1e6}) {
            const double bound = izp_lightspeed_bound(l).value;
            below = detail::worst(below, -1.0 / 24.0 - bound);
            double prev = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                const double b = 0.95 * j / (n - 1);
                const double v = inertia_zp(make_point(b, l)).value;
                positive = detail::worst(positive, v);
                rise = detail::worst(rise, v - prev);
                below = detail::worst(below, bound - v);
                if (l == 1e6) strong = detail::worst(strong, std::abs(v + 1.0 / 24.0));
                if (j % 2 == 1) even = detail::worst(even, std::abs(v - inertia_zp(make_point(-b, l)).value));
                prev = v;
            }
        }
        out.push_back(make_check("rotation: I_zp <= 0 (largest value)", positive, 0.0));
        out.push_back(make_check("rotation: I_zp non-increasing in beta (largest rise)", rise, 1e-6));
        out.push_back(make_check("rotation: -1/24 <= izp_lightspeed_bound <= I_zp (largest violation)", below, 1e-9));
        out.push_back(make_check("rotation: |I_zp + 1/24| at lambda=1e6", strong, 1e-3));
        out.push_back(make_check("rotation: I_zp even in beta", even, 1e-6));
    }
    {
        double trip = 0.0, convex = -std::numeric_limits<double>::infinity();
        for (double l : {0.5, 10.0, kInfiniteCoupling}) {
            std::vector<double> ells, es, bs;
            for (double b : {-0.9, -0.5, -0.2, 0.0, 0.3, 0.6, 0.8}) {
                const double ell = total_angular_momentum(make_point(b, l), 1.0).value;
                const double back = omega_of_ell(ell, l, 1.0);
                trip = detail::worst(trip, std::abs(back - b));
                ells.push_back(ell);
                bs.push_back(b);
                es.push_back(stationary_energy(make_point(b, l), 1.0).value);
            }
            for (std::size_t i = 0; i < ells.size(); ++i)
                for (std::size_t j = 0; j < ells.size(); ++j)
                    convex = detail::worst(convex, bs[j] * (ells[i] - ells[j]) - (es[i] - es[j]));
        }
        out.push_back(make_check("rotation: omega_of_ell round trip", trip, 1e-8));
        out.push_back(make_check("rotation: E_s convex in ell (largest violation)", convex, 1e-10));
    }
    {
        std::vector<double> grid = default_beta_grid();
        if (level == VerifyLevel::fast) {
            std::vector<double> coarse;
            for (std::size_t i = 0; i < grid.size(); i += 4) coarse.push_back(grid[i]);
            grid = coarse;
        }
        double min_total = std::numeric_limits<double>::infinity();
        bool non_rotating = true;
        for (double l : {0.5, 2.0, 10.0, 100.0, 1e6}) {
            const auto r = ground_state_report(l, 1.0, grid);
            min_total = std::min(min_total, r.min_inertia_total);
            non_rotating = non_rotating && r.status == GroundState::non_rotating;
        }
        out.push_back(make_check("rotation: min I_total for I_hat=1", non_rotating ? min_total : -1.0, 1.0 - 1.0 / 24.0,
                                 true));
        double zero = 0.0;
        for (double l : {0.5, 10.0}) {
            zero = detail::worst(zero, std::abs(omega_of_ell(0.0, l, 1.0)));
            for (double b : {-0.5, -1e-3, 1e-3, 0.5})
                if (total_angular_momentum(make_point(b, l), 1.0).value == 0.0)
                    zero = std::numeric_limits<double>::infinity();
        }
        out.push_back(make_check("rotation: ell_total = 0 only at beta = 0", zero, 1e-12));
    }
    if (level == VerifyLevel::full) {
        double d = 0.0;
        for (double l : {0.5, 10.0})
            for (double b : {0.0, 0.4, 0.8}) {
                const ModelPoint p = make_point(b, l);
                d = detail::worst(d, std::abs(inertia_zp(p).value - inertia_zp_from_energy(p).value));
            }
        out.push_back(make_check("rotation: I_zp vs -d^2E_c/dbeta^2", d, 1e-5));
    }
    return out;
}

inline std::vector<CheckResult> run_verification(VerifyLevel level) {
    std::vector<CheckResult> all;
    for (auto part : {spectrum_checks(level), energy_checks(level), rotation_checks(level)})
        all.insert(all.end(), part.begin(), part.end());
    return all;
}

}  // namespace rotring
