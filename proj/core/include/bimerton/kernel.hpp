#pragma once

/**
 * @file kernel.hpp
 * @brief Green's-function weights for one timestep of the bivariate Merton PIDE.
 *
 * The transition density over a step dtau is a Poisson mixture of bivariate
 * Gaussians,
 *
 *   g(z) = sum_k (lambda dtau)^k / k! * exp(theta - q_k(z) / 2) / (2 pi sqrt(det C_k)),
 *   q_k(z) = (beta + z + k mu)^T C_k^{-1} (beta + z + k mu),
 *   C_k = dtau * C_diff + k * C_jump,  beta = dtau * drift,  theta = -(r + lambda) dtau,
 *
 * where z is the displacement x_n - x_l. Every term is nonnegative, so any
 * truncation keeps the resulting quadrature weights nonnegative.
 */

#include <complex>
#include <cstddef>

#include "bimerton/array2d.hpp"
#include "bimerton/grid.hpp"
#include "bimerton/model.hpp"

namespace bimerton {

/// Hard upper bound on the truncation order.
inline constexpr int kMaxTruncationOrder = 200;

/// Precomputed constants of the k-th series term for a fixed dtau.
struct SeriesTerm {
    int k = 0;
    Vec2 mean_shift;             ///< beta + k * mu
    SymMat2 cov_k;               ///< C + k * C_jump
    double poisson_weight = 0.0; ///< (lambda dtau)^k / k!
    double theta = 0.0;          ///< -(r + lambda) dtau

    static SeriesTerm make(const DerivedModel& model, double dtau, int k);

    /// Contribution of this term to g at displacement z. Never negative.
    double operator()(Vec2 z) const noexcept;

private:
    SymMat2 inv_;
    double norm_ = 0.0;  ///< poisson_weight * exp(theta) / (2 pi sqrt(det cov_k))
};

/// Default tolerance 1e-8 * dtau^2, floored at 1e-14.
double default_epsilon(double dtau) noexcept;

/// Upper bound on the per-point series remainder after k terms:
/// e^{-(r+lambda)dtau} / (2 pi sqrt(det C)) * (e lambda dtau)^{k+1} / (k+1)^{k+1}.
double truncation_test(const DerivedModel& model, double dtau, int k);

/// Smallest K at which truncation_test(K) < epsilon, found by stepping k
/// upward from 0 and testing before each increment. While k + 1 < e lambda dtau
/// the bound is still rising, so the loop does not stop there.
/// @throws std::invalid_argument if epsilon <= 0 or dtau <= 0.
/// @throws NumericalError if K would exceed kMaxTruncationOrder.
int select_truncation_K(const DerivedModel& model, double dtau, double epsilon);

/// Single series term evaluated at displacement z.
double eval_series_term(const DerivedModel& model, double dtau, int k, Vec2 z);

/// Truncated density sum_{k=0}^{K} term_k(z) (not rescaled by dx dy).
double eval_density(const DerivedModel& model, double dtau, int K, Vec2 z);

/// Rescaled weights dx*dy*g(p dx, q dy) on the displacement lattice
/// p in [-3N/2+1, 3N/2-1], q in [-3J/2+1, 3J/2-1].
struct KernelArray {
    Array2D<double> weights;  ///< (3N-1) x (3J-1)
    int N = 0;
    int J = 0;
    int K = 0;
    double epsilon = 0.0;
    double dtau = 0.0;
    double dx = 0.0;
    double dy = 0.0;

    /// Storage offset of displacement p (resp. q); valid for |p| <= 3N/2-1.
    std::size_t row_of(int p) const noexcept { return static_cast<std::size_t>(p + 3 * N / 2 - 1); }
    std::size_t col_of(int q) const noexcept { return static_cast<std::size_t>(q + 3 * J / 2 - 1); }
    double at_displacement(int p, int q) const noexcept { return weights(row_of(p), col_of(q)); }
};

/// Builds the rescaled weight lattice once for (model, grid). The truncation
/// order comes from select_truncation_K(model, grid.dtau, epsilon).
/// @throws std::invalid_argument if epsilon <= 0 or grid was built for another maturity.
KernelArray build_kernel(const DerivedModel& model, const GridSpec& grid, double epsilon);

/// Same as build_kernel but with an explicit truncation order.
KernelArray build_kernel_with_order(const DerivedModel& model, const GridSpec& grid, int K,
                                    double epsilon = 0.0);

/// Quadrature mass sum_{l,d} phi_{l,d} w[n-l][j-d] seen by interior node (n, j).
double kernel_mass(const KernelArray& kernel, const TrapezoidWeights& phi, int n = 0, int j = 0);

/// Psi(eta) such that the Fourier transform of g over a step dtau is exp(Psi(eta) dtau).
std::complex<double> fourier_symbol(const DerivedModel& model, Vec2 eta);

/// sum_{p,q} w_{p,q} exp(-i (eta_x p dx + eta_y q dy)); approximates exp(Psi(eta) dtau).
std::complex<double> sampled_transform(const KernelArray& kernel, Vec2 eta);

}  // namespace bimerton
