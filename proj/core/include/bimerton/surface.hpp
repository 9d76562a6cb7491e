#pragma once

#include "bimerton/array2d.hpp"
#include "bimerton/grid.hpp"

namespace bimerton {

/// Option values v^m on every dagger node, (2N+1) x (2J+1), row = x index.
/// Storage (i, j) holds node (n, d) = (i - N, j - J).
struct ValueSurface {
    Array2D<double> values;
    int m = 0;          ///< time level
    double dtau = 0.0;

    int N() const noexcept { return static_cast<int>(values.rows() - 1) / 2; }
    int J() const noexcept { return static_cast<int>(values.cols() - 1) / 2; }

    double at_node(int n, int d) const noexcept {
        return values(static_cast<std::size_t>(n + N()), static_cast<std::size_t>(d + J()));
    }
    double& at_node(int n, int d) noexcept {
        return values(static_cast<std::size_t>(n + N()), static_cast<std::size_t>(d + J()));
    }
};

/// Values on interior nodes only, (N-1) x (J-1); storage (i, j) holds node
/// (i - N/2 + 1, j - J/2 + 1).
using InteriorValues = Array2D<double>;

}  // namespace bimerton
