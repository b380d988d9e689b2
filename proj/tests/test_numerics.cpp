#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rotring/numerics/derivative.hpp"
#include "rotring/numerics/quadrature.hpp"
#include "rotring/numerics/roots.hpp"

using namespace rotring;
using namespace rotring::numerics;
using std::numbers::pi;

// Each oracle must be reproduced within the reported error estimate, and the
// estimate must honour the requested tolerance.
static void expect_within_estimate(const QuadratureResult& r, double exact, double tol) {
    EXPECT_NEAR(r.value, exact, std::max(r.error_estimate, 1e-15)) << "estimate " << r.error_estimate;
    EXPECT_LE(r.error_estimate, tol);
}

TEST(SemiInfinite, LogOneMinusExp) {
    auto f = [](double x) { return std::log(-std::expm1(-2 * pi * x)); };
    auto tail = [](double x) { return 1.01 * std::exp(-2 * pi * x) / (2 * pi) / (1 - std::exp(-2 * pi * x)); };
    expect_within_estimate(integrate_semi_infinite(f, 1e-10, tail), -pi / 12, 1e-10);
    // No tail bound: decay is probed.
    EXPECT_NEAR(integrate_semi_infinite(f, 1e-10).value, -pi / 12, 1e-10);
}

TEST(SemiInfinite, Gamma2) {
    auto f = [](double x) { return x * std::exp(-x); };
    auto tail = [](double x) { return (x + 1) * std::exp(-x); };
    expect_within_estimate(integrate_semi_infinite(f, 1e-10, tail), 1.0, 1e-10);
    EXPECT_NEAR(integrate_semi_infinite(f, 1e-10).value, 1.0, 1e-10);
}

TEST(SemiInfinite, ExpOverSinh) {
    auto f = [](double x) { return x * std::exp(-2 * pi * x) / std::sinh(2 * pi * x); };
    auto tail = [](double x) {
        const double c = 4 * pi;
        return 2.0 / (1 - std::exp(-4 * pi)) * std::exp(-c * x) * (x / c + 1 / (c * c));
    };
    expect_within_estimate(integrate_semi_infinite(f, 1e-12, tail), 1.0 / 48, 1e-12);
}

TEST(SemiInfinite, SlowExponentialUsesManyPanels) {
    const double a = 2 * pi * 0.005;  // like 1 - |beta| = 0.005
    auto f = [a](double x) { return std::exp(-a * x); };
    auto tail = [a](double x) { return std::exp(-a * x) / a; };
    expect_within_estimate(integrate_semi_infinite(f, 1e-10, tail), 1 / a, 1e-10);
}

TEST(SemiInfinite, RejectsBadInput) {
    auto f = [](double x) { return std::exp(-x); };
    EXPECT_THROW(integrate_semi_infinite(f, 0.0), domain_error);
    EXPECT_THROW(integrate_semi_infinite([](double) { return 1.0; }, 1e-8), numerical_failure);
    EXPECT_THROW(integrate_semi_infinite([](double) { return std::nan(""); }, 1e-8,
                                         [](double x) { return std::exp(-x); }),
                 numerical_failure);
}

TEST(TanhSinh, EndpointSingularities) {
    expect_within_estimate(tanh_sinh([](double x) { return std::log(x); }, 0, 1, 1e-12), -1.0, 1e-12);
    expect_within_estimate(tanh_sinh([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-10), 2.0, 1e-10);
    expect_within_estimate(tanh_sinh([](double x) { return std::cos(x); }, 0, pi / 2, 1e-13), 1.0, 1e-13);
}

TEST(TanhSinh, RejectsEmptyInterval) {
    EXPECT_THROW(tanh_sinh([](double x) { return x; }, 1, 0, 1e-12), domain_error);
    EXPECT_THROW(tanh_sinh([](double x) { return x; }, 0, 1, 0.0), domain_error);
}

TEST(GaussKronrod, ComplexOscillatory) {
    auto f = [](double s) { return std::exp(std::complex<double>(0, 7.3 * s)); };
    const auto r = integrate_interval(f, 0, 2 * pi, 1e-13, 8);
    const auto exact = (std::exp(std::complex<double>(0, 7.3 * 2 * pi)) - 1.0) / std::complex<double>(0, 7.3);
    EXPECT_LT(std::abs(r.value - exact), 1e-12);
    EXPECT_LE(r.error_estimate, 1e-13);
}

TEST(GaussKronrod, PanelBudget) {
    auto f = [](double x) { return std::sin(1e4 * x); };
    EXPECT_THROW(integrate_interval(f, 0, 100, 1e-14, 1, 20), numerical_failure);
}

TEST(BracketRoots, Sine) {
    auto scan = bracket_roots([](double x) { return std::sin(x); }, 0.1, 7, 0.1);
    ASSERT_EQ(scan.brackets.size(), 2u);
    EXPECT_LT(scan.brackets[0].lo, pi);
    EXPECT_GT(scan.brackets[0].hi, pi);
    EXPECT_LT(scan.brackets[1].lo, 2 * pi);
    EXPECT_GT(scan.brackets[1].hi, 2 * pi);
    EXPECT_LE(scan.brackets[0].hi - scan.brackets[0].lo, 0.1 + 1e-12);
}

TEST(BracketRoots, Parabola) {
    auto scan = bracket_roots([](double x) { return x * x - 4; }, 0, 3, 0.5);
    ASSERT_EQ(scan.brackets.size(), 1u);
    EXPECT_LE(scan.brackets[0].lo, 2.0);
    EXPECT_GE(scan.brackets[0].hi, 2.0);
}

TEST(BracketRoots, DoubleRootIsTangency) {
    auto scan = bracket_roots([](double x) { return (x - 1) * (x - 1); }, 0, 2, 0.1);
    EXPECT_TRUE(scan.brackets.empty());
    ASSERT_EQ(scan.tangencies.size(), 1u);
    EXPECT_NEAR(scan.tangencies[0].x, 1.0, 0.1);
}

TEST(BracketRoots, OffGridDoubleRoot) {
    auto scan = bracket_roots([](double x) { return (x - 1.03) * (x - 1.03); }, 0, 2, 0.1);
    EXPECT_TRUE(scan.brackets.empty());
    ASSERT_EQ(scan.tangencies.size(), 1u);
    EXPECT_LE(scan.tangencies[0].lo, 1.03);
    EXPECT_GE(scan.tangencies[0].hi, 1.03);
}

TEST(BracketRoots, RejectsBadInput) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(bracket_roots(f, 0, 1, 0), domain_error);
    EXPECT_THROW(bracket_roots(f, 1, 0, 0.1), domain_error);
}

TEST(RefineRoot, Cosine) {
    EXPECT_NEAR(refine_root([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-12), pi / 2, 1e-12);
}

TEST(RefineRoot, TanEquation) {
    const double r = refine_root([](double x) { return std::tan(pi * x) - 1 / x; }, 0.3, 0.45, 1e-14);
    EXPECT_GT(r, 0.38);
    EXPECT_LT(r, 0.39);
    EXPECT_NEAR(std::tan(pi * r), 1 / r, 1e-10);
}

TEST(RefineRoot, Identity) {
    EXPECT_NEAR(refine_root([](double x) { return x; }, -1.0, 1.0, 1e-14), 0.0, 1e-14);
}

TEST(RefineRoot, NoSignChange) {
    EXPECT_THROW(refine_root([](double x) { return x * x + 1; }, -1.0, 1.0, 1e-12), domain_error);
}

TEST(Derivative, Examples) {
    EXPECT_NEAR(derivative([](double x) { return x * x; }, 3.0, 1e-8).value, 6.0, 1e-8);
    EXPECT_NEAR(derivative([](double x) { return std::sin(x); }, 0.0, 1e-8).value, 1.0, 1e-8);
    EXPECT_NEAR(derivative([](double x) { return std::log1p(x); }, 1.0, 1e-8).value, 0.5, 1e-8);
}

TEST(Derivative, EvenFunctionAtZero) {
    auto f = [](double x) { return std::cosh(x) + x * x * x * x; };
    EXPECT_NEAR(derivative(f, 0.0, 1e-10).value, 0.0, 1e-10);
}

TEST(Derivative, ErrorEstimateIsHonest) {
    auto r = derivative([](double x) { return std::exp(x); }, 0.7, 1e-9);
    EXPECT_NEAR(r.value, std::exp(0.7), std::max(10 * r.error_estimate, 1e-12));
}

TEST(Derivative, SecondDerivative) {
    auto r = second_derivative([](double x) { return std::sin(x); }, 0.4, 1e-8);
    EXPECT_NEAR(r.value, -std::sin(0.4), 1e-7);
}

TEST(Derivative, StencilMustStayInDomain) {
    DerivativeOptions opt;
    opt.initial_step = 0.1;
    opt.lower = -1;
    opt.upper = 1;
    EXPECT_THROW(derivative([](double x) { return x; }, 0.95, 1e-8, opt), domain_error);
}
