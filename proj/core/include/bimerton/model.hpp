#pragma once

/**
 * @file model.hpp
 * @brief Bivariate Merton jump-diffusion parameters and derived quantities.
 *
 * Log-prices x = ln X, y = ln Y follow correlated Brownian motion plus a
 * common Poisson jump process whose log-multipliers (ln xi_x, ln xi_y) are
 * bivariate normal. Everything downstream consumes the validated
 * DerivedModel produced by validate().
 */

#include <array>

namespace bimerton {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct SymMat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    constexpr double det() const noexcept { return xx * yy - xy * xy; }

    /// Cofactor inverse; caller guarantees det() > 0.
    constexpr SymMat2 inverse() const noexcept {
        const double d = det();
        return {yy / d, -xy / d, xx / d};
    }

    /// v^T A v
    constexpr double quad(Vec2 v) const noexcept {
        return xx * v.x * v.x + 2.0 * xy * v.x * v.y + yy * v.y * v.y;
    }

    constexpr bool positive_definite() const noexcept { return xx > 0.0 && det() > 0.0; }

    friend constexpr SymMat2 operator+(SymMat2 a, SymMat2 b) noexcept {
        return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
    }
    friend constexpr SymMat2 operator*(double s, SymMat2 a) noexcept {
        return {s * a.xx, s * a.xy, s * a.yy};
    }
    friend constexpr bool operator==(SymMat2, SymMat2) = default;
};

/// Market and contract-independent model parameters. Rates and volatilities
/// are annualised; T is in years.
struct ModelParams {
    double sigma_x = 0.0;   ///< diffusion volatility of X
    double sigma_y = 0.0;   ///< diffusion volatility of Y
    double rho = 0.0;       ///< Brownian correlation, |rho| < 1
    double r = 0.0;         ///< risk-free rate
    double lambda = 0.0;    ///< jump intensity, >= 0
    double mu_jx = 0.0;     ///< mean of ln xi_x
    double mu_jy = 0.0;     ///< mean of ln xi_y
    double sigma_jx = 0.0;  ///< std dev of ln xi_x
    double sigma_jy = 0.0;  ///< std dev of ln xi_y
    double rho_j = 0.0;     ///< correlation of (ln xi_x, ln xi_y), |rho_j| < 1
    double T = 0.0;         ///< maturity
};

/// Quantities derived once from validated ModelParams.
struct DerivedModel {
    ModelParams params;
    double kappa_x = 0.0;   ///< E[xi_x - 1]
    double kappa_y = 0.0;   ///< E[xi_y - 1]
    SymMat2 cov_diff;       ///< per-unit-time diffusion covariance
    SymMat2 cov_jump;       ///< covariance of one jump's log-multipliers
    Vec2 drift;             ///< per-unit-time drift of (x, y)
    Vec2 jump_mean;         ///< (mu_jx, mu_jy)
};

/// Lognormal mean minus one: exp(mu + s^2/2) - 1.
double jump_compensator(double mu, double sigma) noexcept;

/// Checks every field and assembles the derived model.
/// @throws std::invalid_argument naming the offending field.
DerivedModel validate(const ModelParams& params);

}  // namespace bimerton
