#pragma once

/**
 * @file grid.hpp
 * @brief Nested computational domains and uniform meshes.
 *
 * Three nested boxes share one mesh per axis, anchored at the spot
 * log-price z0 = ln(Z0):
 *   interior  (z_min, z_max)       nodes n in [-N/2+1, N/2-1]
 *   dagger    [z_min^+, z_max^+]   nodes n in [-N, N]          (values live here)
 *   ddagger   displacements n - l  in [-3N/2+1, 3N/2-1]        (kernel lives here)
 * with z_min^+ = z_min - P/2, z_max^+ = z_max + P/2 and P = z_max - z_min.
 */

#include <cstddef>
#include <vector>

#include "bimerton/model.hpp"

namespace bimerton {

/// Closed integer range [lo, hi].
struct IndexRange {
    int lo = 0;
    int hi = -1;

    constexpr int count() const noexcept { return hi - lo + 1; }
    constexpr bool contains(int i) const noexcept { return i >= lo && i <= hi; }
    constexpr bool contains(IndexRange other) const noexcept {
        return other.lo >= lo && other.hi <= hi;
    }
    /// Zero-based storage offset of index i.
    constexpr std::size_t offset(int i) const noexcept { return static_cast<std::size_t>(i - lo); }
    friend constexpr bool operator==(IndexRange, IndexRange) = default;
};

/// Node index sets for one axis with N intervals on the interior box.
struct AxisIndexSets {
    IndexRange interior;  ///< {-N/2+1, ..., N/2-1}
    IndexRange dagger;    ///< {-N, ..., N}
    IndexRange ddagger;   ///< {-3N/2+1, ..., 3N/2-1}
};

struct IndexSets {
    AxisIndexSets x;
    AxisIndexSets y;
};

/// Uniform mesh on one axis, with all three nesting levels.
struct AxisGrid {
    int intervals = 0;          ///< N (or J) on the interior box
    double min = 0.0, max = 0.0;                  ///< interior box
    double dagger_min = 0.0, dagger_max = 0.0;    ///< integration box
    double ddagger_min = 0.0, ddagger_max = 0.0;  ///< displacement box (relative)
    double step = 0.0;          ///< mesh width
    double anchor = 0.0;        ///< z_hat0, midpoint of every box

    double node(int n) const noexcept { return anchor + n * step; }
    double width() const noexcept { return max - min; }
};

struct GridSpec {
    AxisGrid x;
    AxisGrid y;
    int M = 0;            ///< timesteps
    double T = 0.0;       ///< maturity
    double dtau = 0.0;    ///< T / M

    int N() const noexcept { return x.intervals; }
    int J() const noexcept { return y.intervals; }
    double dx() const noexcept { return x.step; }
    double dy() const noexcept { return y.step; }

    /// Number of dagger nodes per axis (2N+1, 2J+1).
    std::size_t dagger_nx() const noexcept { return static_cast<std::size_t>(2 * x.intervals + 1); }
    std::size_t dagger_ny() const noexcept { return static_cast<std::size_t>(2 * y.intervals + 1); }
    /// Number of displacement lattice points per axis (3N-1, 3J-1).
    std::size_t ddagger_nx() const noexcept { return static_cast<std::size_t>(3 * x.intervals - 1); }
    std::size_t ddagger_ny() const noexcept { return static_cast<std::size_t>(3 * y.intervals - 1); }

    IndexSets index_sets() const noexcept;
};

/// Builds the grid anchored at (ln X0, ln Y0) with interior half-widths
/// (w_x, w_y) in log-price units.
/// @throws std::invalid_argument on nonpositive spots/widths, odd or < 4 N/J, M < 1.
GridSpec build_grid(const DerivedModel& model, Vec2 spot, Vec2 half_width, int N, int J, int M);

/// Separable 2-D composite trapezoid weights over the dagger box.
struct TrapezoidWeights {
    std::vector<double> x;  ///< length 2N+1: 1/2 at ends, 1 inside
    std::vector<double> y;  ///< length 2J+1

    double operator()(std::size_t i, std::size_t j) const noexcept { return x[i] * y[j]; }
};

TrapezoidWeights trapezoid_weights(const GridSpec& grid);

}  // namespace bimerton
