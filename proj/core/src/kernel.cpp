#include "bimerton/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimerton/errors.hpp"

namespace bimerton {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double poisson_prob_unnormalised(double mean, int k) {
    if (k == 0) return 1.0;
    if (mean == 0.0) return 0.0;
    return std::exp(k * std::log(mean) - std::lgamma(k + 1.0));
}

void check_dtau(double dtau) {
    if (!(dtau > 0.0) || !std::isfinite(dtau))
        throw std::invalid_argument("kernel: dtau must be finite and > 0");
}

}  // namespace

SeriesTerm SeriesTerm::make(const DerivedModel& model, double dtau, int k) {
    check_dtau(dtau);
    if (k < 0) throw std::invalid_argument("kernel: series index k must be >= 0");
    const auto& p = model.params;
    SeriesTerm t;
    t.k = k;
    t.mean_shift = dtau * model.drift + static_cast<double>(k) * model.jump_mean;
    t.cov_k = dtau * model.cov_diff + static_cast<double>(k) * model.cov_jump;
    t.poisson_weight = poisson_prob_unnormalised(p.lambda * dtau, k);
    t.theta = -(p.r + p.lambda) * dtau;
    t.inv_ = t.cov_k.inverse();
    t.norm_ = t.poisson_weight * std::exp(t.theta) / (kTwoPi * std::sqrt(t.cov_k.det()));
    return t;
}

double SeriesTerm::operator()(Vec2 z) const noexcept {
    if (norm_ == 0.0) return 0.0;
    return norm_ * std::exp(-0.5 * inv_.quad(mean_shift + z));
}

double default_epsilon(double dtau) noexcept { return std::max(1e-8 * dtau * dtau, 1e-14); }

double truncation_test(const DerivedModel& model, double dtau, int k) {
    check_dtau(dtau);
    const auto& p = model.params;
    const double det_c = dtau * dtau * model.cov_diff.det();
    const double prefactor = std::exp(-(p.r + p.lambda) * dtau) / (kTwoPi * std::sqrt(det_c));
    const double kp1 = k + 1.0;
    return prefactor * std::pow(std::numbers::e * p.lambda * dtau / kp1, kp1);
}

int select_truncation_K(const DerivedModel& model, double dtau, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("kernel: epsilon must be > 0");
    check_dtau(dtau);
    const auto& p = model.params;
    if (p.lambda == 0.0) return 0;
    // Compared in log space: for large (r + lambda) dtau the prefactor
    // underflows and the plain test would stop at k = 0.
    const double log_prefactor = -(p.r + p.lambda) * dtau -
                                 std::log(kTwoPi * dtau * std::sqrt(model.cov_diff.det()));
    const double log_rate = 1.0 + std::log(p.lambda * dtau);
    const double log_eps = std::log(epsilon);
    auto log_test = [&](int k) {
        const double kp1 = k + 1.0;
        return log_prefactor + kp1 * (log_rate - std::log(kp1));
    };
    // The bound only decreases once k + 1 exceeds e * lambda * dtau; before that
    // a small value says nothing about the remainder.
    const double rising_until = std::numbers::e * p.lambda * dtau;
    int k = 0;
    while (log_test(k) >= log_eps || k + 1.0 < rising_until) {
        ++k;
        if (k > kMaxTruncationOrder)
            throw NumericalError("kernel: truncation order exceeded cap of " +
                                 std::to_string(kMaxTruncationOrder) + " (epsilon " +
                                 std::to_string(epsilon) + ")");
    }
    return k;
}

double eval_series_term(const DerivedModel& model, double dtau, int k, Vec2 z) {
    return SeriesTerm::make(model, dtau, k)(z);
}

double eval_density(const DerivedModel& model, double dtau, int K, Vec2 z) {
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) sum += eval_series_term(model, dtau, k, z);
    return sum;
}

KernelArray build_kernel(const DerivedModel& model, const GridSpec& grid, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("kernel: epsilon must be > 0");
    const int K = select_truncation_K(model, grid.dtau, epsilon);
    return build_kernel_with_order(model, grid, K, epsilon);
}

KernelArray build_kernel_with_order(const DerivedModel& model, const GridSpec& grid, int K,
                                    double epsilon) {
    if (std::abs(grid.T - model.params.T) > 1e-12 * std::max(1.0, model.params.T))
        throw std::invalid_argument("kernel: grid maturity does not match model maturity");
    if (K < 0 || K > kMaxTruncationOrder)
        throw std::invalid_argument("kernel: truncation order out of range");

    KernelArray kernel;
    kernel.N = grid.N();
    kernel.J = grid.J();
    kernel.K = K;
    kernel.epsilon = epsilon;
    kernel.dtau = grid.dtau;
    kernel.dx = grid.dx();
    kernel.dy = grid.dy();
    kernel.weights = Array2D<double>(grid.ddagger_nx(), grid.ddagger_ny(), 0.0);

    const int p_lo = -3 * kernel.N / 2 + 1;
    const int q_lo = -3 * kernel.J / 2 + 1;
    const double area = grid.dx() * grid.dy();
    const std::size_t nq = kernel.weights.cols();

    std::vector<double> zy(nq);
    for (std::size_t c = 0; c < nq; ++c) zy[c] = (q_lo + static_cast<int>(c)) * grid.dy();

    for (int k = 0; k <= K; ++k) {
        const SeriesTerm term = SeriesTerm::make(model, grid.dtau, k);
        if (term.poisson_weight == 0.0) continue;
        for (std::size_t r = 0; r < kernel.weights.rows(); ++r) {
            const double zx = (p_lo + static_cast<int>(r)) * grid.dx();
            auto row = kernel.weights.row(r);
            for (std::size_t c = 0; c < nq; ++c) row[c] += area * term({zx, zy[c]});
        }
    }
    return kernel;
}

double kernel_mass(const KernelArray& kernel, const TrapezoidWeights& phi, int n, int j) {
    const int N = kernel.N;
    const int J = kernel.J;
    if (phi.x.size() != static_cast<std::size_t>(2 * N + 1) ||
        phi.y.size() != static_cast<std::size_t>(2 * J + 1))
        throw std::invalid_argument("kernel_mass: trapezoid weights do not match kernel grid");
    if (std::abs(n) > N / 2 - 1 || std::abs(j) > J / 2 - 1)
        throw std::invalid_argument("kernel_mass: center must be an interior node");
    double mass = 0.0;
    for (int l = -N; l <= N; ++l) {
        const double wx = phi.x[static_cast<std::size_t>(l + N)];
        for (int d = -J; d <= J; ++d)
            mass += wx * phi.y[static_cast<std::size_t>(d + J)] * kernel.at_displacement(n - l, j - d);
    }
    return mass;
}

std::complex<double> fourier_symbol(const DerivedModel& model, Vec2 eta) {
    using namespace std::complex_literals;
    const auto& p = model.params;
    const std::complex<double> jump_cf =
        std::exp(1.0i * dot(model.jump_mean, eta) - 0.5 * model.cov_jump.quad(eta));
    return -0.5 * model.cov_diff.quad(eta) + 1.0i * dot(model.drift, eta) - (p.r + p.lambda) +
           p.lambda * jump_cf;
}

std::complex<double> sampled_transform(const KernelArray& kernel, Vec2 eta) {
    const int p_lo = -3 * kernel.N / 2 + 1;
    const int q_lo = -3 * kernel.J / 2 + 1;
    std::vector<std::complex<double>> phase_y(kernel.weights.cols());
    for (std::size_t c = 0; c < phase_y.size(); ++c)
        phase_y[c] = std::polar(1.0, -eta.y * (q_lo + static_cast<int>(c)) * kernel.dy);
    std::complex<double> sum = 0.0;
    for (std::size_t r = 0; r < kernel.weights.rows(); ++r) {
        std::complex<double> row_sum = 0.0;
        auto row = kernel.weights.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) row_sum += row[c] * phase_y[c];
        sum += row_sum * std::polar(1.0, -eta.x * (p_lo + static_cast<int>(r)) * kernel.dx);
    }
    return sum;
}

}  // namespace bimerton
