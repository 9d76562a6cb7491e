#pragma once

/**
 * @file pricer.hpp
 * @brief Timestepping driver: convolution, early-exercise max, boundary refresh.
 *
 * One step from tau_m to tau_{m+1}:
 *   1. u = convolution of the rescaled kernel with phi * v^m over the dagger box
 *   2. interior: v^{m+1} = max(u, payoff)   (American) or u (European)
 *   3. outer band: v^{m+1} = payoff * exp(-r tau_{m+1})
 */

#include <cstdint>
#include <optional>
#include <string_view>

#include "bimerton/array2d.hpp"
#include "bimerton/convolve.hpp"
#include "bimerton/grid.hpp"
#include "bimerton/kernel.hpp"
#include "bimerton/model.hpp"
#include "bimerton/payoff.hpp"
#include "bimerton/surface.hpp"

namespace bimerton {

enum class ExerciseStyle { American, European };

std::string_view to_string(ExerciseStyle style) noexcept;
ExerciseStyle parse_exercise_style(std::string_view text);

/// Default relative tolerance for classifying a node as exercised.
inline constexpr double kExerciseTolerance = 1e-8;

struct PricingOptions {
    ExerciseStyle style = ExerciseStyle::American;
    std::optional<double> epsilon;  ///< series tolerance; default_epsilon(dtau) when empty
    EmbedMode embed = EmbedMode::Compact;
    PlannerEffort planner = PlannerEffort::Estimate;
    std::optional<int> stop_step;   ///< stop after this many steps instead of M
};

struct PricingTimings {
    double kernel_seconds = 0.0;
    double plan_seconds = 0.0;
    double steps_seconds = 0.0;
    double total_seconds = 0.0;
};

using ExerciseMask = Array2D<std::uint8_t>;  ///< interior nodes, 1 = exercised

struct PriceResult {
    double price = 0.0;          ///< value at the anchored spot node
    ValueSurface surface;        ///< v at the final level
    ExerciseMask exercise_mask;  ///< empty for European runs
    int K = 0;
    double epsilon = 0.0;
    ExerciseStyle style = ExerciseStyle::American;
    EmbedMode embed = EmbedMode::Compact;
    int steps = 0;
    PricingTimings timings;
};

/// Payoff evaluated on every dagger node.
Array2D<double> payoff_grid(const Payoff& payoff, const GridSpec& grid);

/// v^0 = payoff on every dagger node.
ValueSurface init_surface(const Payoff& payoff, const GridSpec& grid);

/// Overwrites every dagger node outside the interior box with payoff * e^{-r tau}.
void apply_boundary(ValueSurface& surface, const Array2D<double>& payoff_values, double r,
                    double tau);
void apply_boundary(ValueSurface& surface, const Payoff& payoff, const GridSpec& grid, double r,
                    double tau);

/// Everything a step needs that stays fixed for the whole run.
struct StepContext {
    const SpectralKernel& spec;
    const TrapezoidWeights& phi;
    const Array2D<double>& payoff_values;
    double r = 0.0;
    ConvolutionWorkspace& workspace;
};

/// Advances v^m to v^{m+1} with early exercise.
/// @throws NumericalError if the continuation values are not finite.
void step_american(ValueSurface& state, StepContext& ctx);
/// Same without the exercise max.
void step_european(ValueSurface& state, StepContext& ctx);

/// Runs the full scheme and reports the anchored spot value.
/// @throws NumericalError naming the failing step.
PriceResult price(const DerivedModel& model, const Payoff& payoff, const GridSpec& grid,
                  const PricingOptions& options = {});
PriceResult price(const ModelParams& params, const Payoff& payoff, const GridSpec& grid,
                  const PricingOptions& options = {});

/// Interior mask where v - payoff <= tol * max(1, strike).
ExerciseMask exercise_region(const ValueSurface& surface, const Array2D<double>& payoff_values,
                             double strike, double tol = kExerciseTolerance);
ExerciseMask exercise_region(const ValueSurface& surface, const Payoff& payoff,
                             const GridSpec& grid, double tol = kExerciseTolerance);

/// Value at spot (X0, Y0): the node value when on-grid, else bilinear interpolation.
/// @throws std::invalid_argument when (ln X0, ln Y0) lies outside the interior box.
double value_at(const ValueSurface& surface, const GridSpec& grid, double X0, double Y0);

}  // namespace bimerton
