#include "bimerton/pricer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bimerton/errors.hpp"

namespace bimerton {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool in_interior(int n, int d, int N, int J) {
    return std::abs(n) <= N / 2 - 1 && std::abs(d) <= J / 2 - 1;
}

template <typename Combine>
void advance(ValueSurface& state, StepContext& ctx, Combine combine) {
    const InteriorValues u = convolve_step(ctx.spec, state, ctx.phi, ctx.workspace);
    const int N = state.N();
    const int J = state.J();
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            const double c = u(i, j);
            if (!std::isfinite(c))
                throw NumericalError("pricer: non-finite continuation value at step " +
                                     std::to_string(state.m + 1));
            const std::size_t si = i + static_cast<std::size_t>(N / 2 + 1);
            const std::size_t sj = j + static_cast<std::size_t>(J / 2 + 1);
            state.values(si, sj) = combine(c, ctx.payoff_values(si, sj));
        }
    }
    ++state.m;
    apply_boundary(state, ctx.payoff_values, ctx.r, state.m * state.dtau);
}

}  // namespace

std::string_view to_string(ExerciseStyle style) noexcept {
    return style == ExerciseStyle::American ? "american" : "european";
}

ExerciseStyle parse_exercise_style(std::string_view text) {
    if (text == "american") return ExerciseStyle::American;
    if (text == "european") return ExerciseStyle::European;
    throw std::invalid_argument("unknown exercise style '" + std::string(text) +
                                "' (expected american or european)");
}

Array2D<double> payoff_grid(const Payoff& payoff, const GridSpec& grid) {
    Array2D<double> out(grid.dagger_nx(), grid.dagger_ny());
    const int N = grid.N();
    const int J = grid.J();
    for (int n = -N; n <= N; ++n) {
        const double x = grid.x.node(n);
        for (int d = -J; d <= J; ++d)
            out(static_cast<std::size_t>(n + N), static_cast<std::size_t>(d + J)) =
                payoff(x, grid.y.node(d));
    }
    return out;
}

ValueSurface init_surface(const Payoff& payoff, const GridSpec& grid) {
    return {payoff_grid(payoff, grid), 0, grid.dtau};
}

void apply_boundary(ValueSurface& surface, const Array2D<double>& payoff_values, double r,
                    double tau) {
    if (!surface.values.same_shape(payoff_values))
        throw std::invalid_argument("apply_boundary: payoff grid shape mismatch");
    const double discount = std::exp(-r * tau);
    const int N = surface.N();
    const int J = surface.J();
    for (int n = -N; n <= N; ++n) {
        const auto i = static_cast<std::size_t>(n + N);
        for (int d = -J; d <= J; ++d) {
            if (in_interior(n, d, N, J)) continue;
            const auto j = static_cast<std::size_t>(d + J);
            surface.values(i, j) = payoff_values(i, j) * discount;
        }
    }
}

void apply_boundary(ValueSurface& surface, const Payoff& payoff, const GridSpec& grid, double r,
                    double tau) {
    apply_boundary(surface, payoff_grid(payoff, grid), r, tau);
}

void step_american(ValueSurface& state, StepContext& ctx) {
    advance(state, ctx, [](double u, double exercise) { return std::max(u, exercise); });
}

void step_european(ValueSurface& state, StepContext& ctx) {
    advance(state, ctx, [](double u, double) { return u; });
}

PriceResult price(const DerivedModel& model, const Payoff& payoff, const GridSpec& grid,
                  const PricingOptions& options) {
    validate(payoff);
    const auto t_start = Clock::now();
    const int steps = options.stop_step.value_or(grid.M);
    if (steps < 0 || steps > grid.M)
        throw std::invalid_argument("price: stop_step must lie in [0, M]");

    PriceResult result;
    result.style = options.style;
    result.embed = options.embed;
    result.epsilon = options.epsilon.value_or(default_epsilon(grid.dtau));

    auto t0 = Clock::now();
    const KernelArray kernel = build_kernel(model, grid, result.epsilon);
    result.K = kernel.K;
    result.timings.kernel_seconds = seconds_since(t0);

    t0 = Clock::now();
    const SpectralKernel spec = plan(kernel, grid, options.embed, options.planner);
    ConvolutionWorkspace workspace(spec);
    result.timings.plan_seconds = seconds_since(t0);

    const TrapezoidWeights phi = trapezoid_weights(grid);
    const Array2D<double> payoff_values = payoff_grid(payoff, grid);
    ValueSurface state{payoff_values, 0, grid.dtau};
    StepContext ctx{spec, phi, payoff_values, model.params.r, workspace};

    t0 = Clock::now();
    for (int m = 0; m < steps; ++m) {
        if (options.style == ExerciseStyle::American)
            step_american(state, ctx);
        else
            step_european(state, ctx);
    }
    result.timings.steps_seconds = seconds_since(t0);

    result.steps = steps;
    result.price = state.at_node(0, 0);
    if (options.style == ExerciseStyle::American)
        result.exercise_mask = exercise_region(state, payoff_values, payoff.strike);
    result.surface = std::move(state);
    result.timings.total_seconds = seconds_since(t_start);
    return result;
}

PriceResult price(const ModelParams& params, const Payoff& payoff, const GridSpec& grid,
                  const PricingOptions& options) {
    return price(validate(params), payoff, grid, options);
}

ExerciseMask exercise_region(const ValueSurface& surface, const Array2D<double>& payoff_values,
                             double strike, double tol) {
    if (!surface.values.same_shape(payoff_values))
        throw std::invalid_argument("exercise_region: payoff grid shape mismatch");
    const int N = surface.N();
    const int J = surface.J();
    const double threshold = tol * std::max(1.0, strike);
    ExerciseMask mask(static_cast<std::size_t>(N - 1), static_cast<std::size_t>(J - 1), 0);
    for (std::size_t i = 0; i < mask.rows(); ++i) {
        const std::size_t si = i + static_cast<std::size_t>(N / 2 + 1);
        for (std::size_t j = 0; j < mask.cols(); ++j) {
            const std::size_t sj = j + static_cast<std::size_t>(J / 2 + 1);
            mask(i, j) = surface.values(si, sj) - payoff_values(si, sj) <= threshold ? 1 : 0;
        }
    }
    return mask;
}

ExerciseMask exercise_region(const ValueSurface& surface, const Payoff& payoff,
                             const GridSpec& grid, double tol) {
    return exercise_region(surface, payoff_grid(payoff, grid), payoff.strike, tol);
}

double value_at(const ValueSurface& surface, const GridSpec& grid, double X0, double Y0) {
    if (!(X0 > 0.0) || !(Y0 > 0.0))
        throw std::invalid_argument("value_at: spot prices must be > 0");
    const double x = std::log(X0);
    const double y = std::log(Y0);
    if (x < grid.x.min || x > grid.x.max || y < grid.y.min || y > grid.y.max)
        throw std::invalid_argument("value_at: spot lies outside the interior box");

    constexpr double kSnap = 1e-9;
    const double sx = (x - grid.x.anchor) / grid.dx();
    const double sy = (y - grid.y.anchor) / grid.dy();
    const double fx = std::floor(sx);
    const double fy = std::floor(sy);
    double tx = sx - fx;
    double ty = sy - fy;
    int n0 = static_cast<int>(fx);
    int d0 = static_cast<int>(fy);
    if (tx > 1.0 - kSnap) { ++n0; tx = 0.0; }
    if (ty > 1.0 - kSnap) { ++d0; ty = 0.0; }
    if (tx < kSnap) tx = 0.0;
    if (ty < kSnap) ty = 0.0;
    if (tx == 0.0 && ty == 0.0) return surface.at_node(n0, d0);

    const int n1 = std::min(n0 + 1, grid.N());
    const int d1 = std::min(d0 + 1, grid.J());
    return (1 - tx) * (1 - ty) * surface.at_node(n0, d0) + tx * (1 - ty) * surface.at_node(n1, d0) +
           (1 - tx) * ty * surface.at_node(n0, d1) + tx * ty * surface.at_node(n1, d1);
}

}  // namespace bimerton
