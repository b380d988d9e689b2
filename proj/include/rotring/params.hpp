#pragma once

// Physical parameters of the ring and their reduction to the two
// dimensionless numbers (beta, lambda_hat) everything else works with.
//
// Internally all quantities are measured in units hbar = c = R = 1:
//   energy            hbar*c/R
//   angular momentum  hbar
//   moment of inertia hbar*R/c
//   frequency         c/R

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "rotring/errors.hpp"

namespace rotring {

class RingConfig {
public:
    double radius() const { return radius_; }
    double light_speed() const { return light_speed_; }
    double hbar() const { return hbar_; }
    double classical_inertia() const { return classical_inertia_; }
    double coupling() const { return coupling_; }

    // lambda * R^2 / c^2
    double lambda_hat() const { return lambda_hat_; }
    // I * c / (hbar * R)
    double inertia_hat() const { return inertia_hat_; }

private:
    friend RingConfig make_config(double, double, double, double, double);
    RingConfig() = default;

    double radius_ = 1.0;
    double light_speed_ = 1.0;
    double hbar_ = 1.0;
    double classical_inertia_ = 0.0;
    double coupling_ = 0.0;
    double lambda_hat_ = 0.0;
    double inertia_hat_ = 0.0;
};

inline constexpr double kInfiniteCoupling = std::numeric_limits<double>::infinity();

// Dimensionless state at which every spectral and energetic quantity is
// evaluated. lambda_hat may be +infinity, which selects the closed-form
// Dirichlet (impenetrable wall) results.
struct ModelPoint {
    double beta = 0.0;
    double lambda_hat = 0.0;
    bool light_speed = false;  // |beta| == 1, only for the light-speed bound formulas

    bool dirichlet() const { return std::isinf(lambda_hat); }
};

namespace detail {

inline void require_finite(double v, std::string_view name) {
    if (!std::isfinite(v))
        throw domain_error(std::string(name) + " must be finite");
}

inline void require_positive(double v, std::string_view name) {
    require_finite(v, name);
    if (!(v > 0.0)) throw domain_error(std::string(name) + " must be > 0");
}

inline void require_nonnegative(double v, std::string_view name) {
    require_finite(v, name);
    if (!(v >= 0.0)) throw domain_error(std::string(name) + " must be >= 0");
}

}  // namespace detail

inline RingConfig make_config(double radius, double light_speed, double hbar,
                              double classical_inertia, double coupling) {
    detail::require_positive(radius, "radius");
    detail::require_positive(light_speed, "light_speed");
    detail::require_positive(hbar, "hbar");
    detail::require_nonnegative(classical_inertia, "classical_inertia");
    detail::require_nonnegative(coupling, "coupling");

    RingConfig c;
    c.radius_ = radius;
    c.light_speed_ = light_speed;
    c.hbar_ = hbar;
    c.classical_inertia_ = classical_inertia;
    c.coupling_ = coupling;
    c.lambda_hat_ = coupling * radius * radius / (light_speed * light_speed);
    c.inertia_hat_ = classical_inertia * light_speed / (hbar * radius);
    return c;
}

// Validated dimensionless point. |beta| == 1 is rejected unless the caller
// explicitly asks for the light-speed boundary.
inline ModelPoint make_point(double beta, double lambda_hat, bool allow_light_speed = false) {
    detail::require_finite(beta, "beta");
    if (std::isnan(lambda_hat) || !(lambda_hat >= 0.0))
        throw domain_error("lambda_hat must be >= 0");
    const double ab = std::abs(beta);
    if (ab > 1.0) throw domain_error("|beta| > 1: rim speed exceeds the speed of light");
    if (ab == 1.0 && !allow_light_speed)
        throw domain_error("|beta| == 1 requires the explicit light-speed flag");
    return ModelPoint{beta, lambda_hat, ab == 1.0};
}

inline ModelPoint model_point(const RingConfig& config, double omega, bool allow_light_speed = false) {
    detail::require_finite(omega, "omega");
    return make_point(omega * config.radius() / config.light_speed(), config.lambda_hat(),
                      allow_light_speed);
}

enum class Quantity { energy, angular_momentum, inertia, frequency };

inline Quantity parse_quantity(std::string_view name) {
    if (name == "energy") return Quantity::energy;
    if (name == "angular_momentum") return Quantity::angular_momentum;
    if (name == "inertia") return Quantity::inertia;
    if (name == "frequency") return Quantity::frequency;
    throw domain_error("unknown quantity kind '" + std::string(name) + "'");
}

inline const char* unit_label(Quantity kind) {
    switch (kind) {
        case Quantity::energy: return "hbar*c/R";
        case Quantity::angular_momentum: return "hbar";
        case Quantity::inertia: return "hbar*R/c";
        case Quantity::frequency: return "c/R";
    }
    return "";
}

inline double unit_scale(const RingConfig& config, Quantity kind) {
    const double R = config.radius(), c = config.light_speed(), hbar = config.hbar();
    switch (kind) {
        case Quantity::energy: return hbar * c / R;
        case Quantity::angular_momentum: return hbar;
        case Quantity::inertia: return hbar * R / c;
        case Quantity::frequency: return c / R;
    }
    throw domain_error("unknown quantity kind");
}

inline double to_physical(const RingConfig& config, double value, Quantity kind) {
    return value * unit_scale(config, kind);
}

inline double to_dimensionless(const RingConfig& config, double value, Quantity kind) {
    return value / unit_scale(config, kind);
}

}  // namespace rotring
