// Randomized invariants with fixed seeds, so failures reproduce.
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rotring/energy.hpp"
#include "rotring/numerics/roots.hpp"
#include "rotring/params.hpp"
#include "rotring/rotation.hpp"
#include "rotring/spectrum.hpp"

using namespace rotring;

namespace {

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(unsigned seed) : rng(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    double beta() { return uniform(-0.95, 0.95); }
    // Log-uniform over six decades.
    double lambda() { return std::pow(10.0, uniform(-2.0, 4.0)); }
};

}  // namespace

TEST(Property, SpectrumReflection) {
    Sampler s(11);
    for (int i = 0; i < 40; ++i) {
        const double b = s.uniform(0.0, 0.9), l = s.lambda();
        const auto plus = mode_frequencies(make_point(b, l), 8.0);
        const auto minus = mode_frequencies(make_point(-b, l), 8.0);
        ASSERT_EQ(plus.alphas.size(), minus.alphas.size()) << b << " " << l;
        for (std::size_t k = 0; k < plus.alphas.size(); ++k) EXPECT_NEAR(plus.alphas[k], minus.alphas[k], 1e-10);
    }
}

TEST(Property, RootsSolveSecularEquation) {
    Sampler s(12);
    for (int i = 0; i < 40; ++i) {
        const auto p = make_point(s.beta(), s.lambda());
        const auto sp = mode_frequencies(p, 6.0);
        EXPECT_LE(mode_count_defect(sp), 2.0);
        for (double a : sp.alphas) EXPECT_LE(std::abs(secular_value(a, p)), secular_tolerance(a, p));
        for (std::size_t k = 1; k < sp.alphas.size(); ++k) EXPECT_LE(sp.alphas[k - 1], sp.alphas[k]);
    }
}

TEST(Property, ModesAreOrthonormal) {
    Sampler s(13);
    for (int i = 0; i < 8; ++i) {
        const auto p = make_point(s.beta(), s.lambda());
        const auto modes = spectrum_modes(mode_frequencies(p, 2.5));
        for (std::size_t m = 0; m < modes.size(); ++m) {
            EXPECT_TRUE(mode_residuals(modes[m]).passes(1e-8, 1e-6));
            for (std::size_t n = m; n < modes.size(); ++n) {
                const auto [first, second] = inner_products(modes[m], modes[n]);
                EXPECT_LT(std::abs(first - (m == n ? 1.0 : 0.0)), 1e-6);
                EXPECT_LT(std::abs(second), 1e-6);
            }
        }
    }
}

TEST(Property, EnergySymmetryAndBracketing) {
    Sampler s(14);
    for (int i = 0; i < 60; ++i) {
        const double b = s.beta(), l = s.lambda();
        const double e = casimir_energy_corotating(make_point(b, l)).field_energy;
        EXPECT_NEAR(e, casimir_energy_corotating(make_point(-b, l)).field_energy, 1e-9);
        EXPECT_GE(e, casimir_limit_free(b));
        EXPECT_LE(e, casimir_limit_dirichlet(b));
    }
}

TEST(Property, AngularMomentumOddAndBounded) {
    Sampler s(15);
    for (int i = 0; i < 60; ++i) {
        const double b = s.beta(), l = s.lambda();
        const double ell = ell_zp(make_point(b, l)).value;
        EXPECT_NEAR(ell, -ell_zp(make_point(-b, l)).value, 1e-10);
        EXPECT_LE(std::abs(ell), ell_zp_bound(l).value + 1e-12);
        EXPECT_LE(ell * b, 0.0);
    }
}

TEST(Property, InertiaEvenAndAboveBound) {
    Sampler s(16);
    for (int i = 0; i < 20; ++i) {
        const double b = s.beta(), l = s.lambda();
        const double v = inertia_zp(make_point(b, l)).value;
        EXPECT_NEAR(v, inertia_zp(make_point(-b, l)).value, 1e-7);
        EXPECT_LE(v, 0.0);
        EXPECT_GE(v, izp_lightspeed_bound(l).value);
    }
}

TEST(Property, RescalingLeavesDimensionlessOutputsUnchanged) {
    Sampler s(17);
    for (int i = 0; i < 10; ++i) {
        const double R = s.uniform(0.5, 3.0), lam = s.uniform(0.1, 20.0), I = s.uniform(0.5, 3.0);
        const double omega = s.uniform(-0.9, 0.9) / R;
        const double k = s.uniform(0.1, 10.0);
        const auto base = make_config(R, 1, 1, I, lam);
        const auto scaled = make_config(k * R, 1, 1, k * I, lam / (k * k));
        const auto p = model_point(base, omega), q = model_point(scaled, omega / k);
        EXPECT_NEAR(p.beta, q.beta, 1e-15);
        EXPECT_NEAR(q.lambda_hat / p.lambda_hat, 1.0, 1e-14);
        EXPECT_NEAR(scaled.inertia_hat() / base.inertia_hat(), 1.0, 1e-14);
        EXPECT_NEAR(casimir_energy_corotating(p).field_energy, casimir_energy_corotating(q).field_energy, 1e-12);
        EXPECT_NEAR(total_angular_momentum(p, base.inertia_hat()).value,
                    total_angular_momentum(q, scaled.inertia_hat()).value, 1e-12);
    }
}

TEST(Property, RefineRootSignFlipAndAffineMap) {
    Sampler s(18);
    for (int i = 0; i < 200; ++i) {
        const double r = s.uniform(-2, 2), c = s.uniform(0.1, 3), d = s.uniform(0, 1);  // keeps r the only root
        auto f = [&](double x) { return (x - r) * (x * x + c) + d * (x - r) * (x - r) * (x - r); };
        const double lo = r - s.uniform(0.1, 1), hi = r + s.uniform(0.1, 1);
        const double root = numerics::refine_root(f, lo, hi, 1e-14);
        EXPECT_NEAR(root, r, 1e-12);
        EXPECT_NEAR(numerics::refine_root([&](double x) { return -f(x); }, lo, hi, 1e-14), root, 1e-13);
        // g(y) = f(a y + b) has its root at (root - b)/a.
        const double a = s.uniform(0.2, 5), b = s.uniform(-3, 3);
        auto g = [&](double y) { return f(a * y + b); };
        const double mapped = numerics::refine_root(g, (lo - b) / a, (hi - b) / a, 1e-14);
        EXPECT_NEAR(a * mapped + b, root, 1e-12 * std::max(1.0, a));
    }
}

TEST(Property, InversionRoundTrip) {
    Sampler s(19);
    for (int i = 0; i < 10; ++i) {
        const double b = s.uniform(-0.95, 0.95), l = s.lambda(), I = s.uniform(0.1, 3.0);
        const double ell = total_angular_momentum(make_point(b, l), I).value;
        EXPECT_NEAR(omega_of_ell(ell, l, I), b, 1e-8);
    }
}
