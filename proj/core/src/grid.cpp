#include "bimerton/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bimerton {

namespace {

AxisIndexSets axis_sets(int n) {
    return {{-n / 2 + 1, n / 2 - 1}, {-n, n}, {-3 * n / 2 + 1, 3 * n / 2 - 1}};
}

AxisGrid make_axis(double anchor, double half_width, int intervals) {
    AxisGrid a;
    a.intervals = intervals;
    a.anchor = anchor;
    a.min = anchor - half_width;
    a.max = anchor + half_width;
    const double p = a.max - a.min;
    a.dagger_min = a.min - 0.5 * p;
    a.dagger_max = a.max + 0.5 * p;
    a.ddagger_min = -1.5 * p;
    a.ddagger_max = 1.5 * p;
    a.step = 2.0 * half_width / intervals;
    return a;
}

void check_intervals(int n, const char* name) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument(std::string("grid: ") + name + " must be even and >= 4, got " +
                                    std::to_string(n));
}

std::vector<double> trapezoid_1d(std::size_t count) {
    std::vector<double> w(count, 1.0);
    w.front() = 0.5;
    w.back() = 0.5;
    return w;
}

}  // namespace

IndexSets GridSpec::index_sets() const noexcept {
    return {axis_sets(x.intervals), axis_sets(y.intervals)};
}

GridSpec build_grid(const DerivedModel& model, Vec2 spot, Vec2 half_width, int N, int J, int M) {
    if (!(spot.x > 0.0) || !(spot.y > 0.0) || !std::isfinite(spot.x) || !std::isfinite(spot.y))
        throw std::invalid_argument("grid: spot prices must be finite and > 0");
    if (!(half_width.x > 0.0) || !(half_width.y > 0.0) || !std::isfinite(half_width.x) ||
        !std::isfinite(half_width.y))
        throw std::invalid_argument("grid: half-widths must be finite and > 0");
    check_intervals(N, "N");
    check_intervals(J, "J");
    if (M < 1) throw std::invalid_argument("grid: M must be >= 1");

    GridSpec g;
    g.x = make_axis(std::log(spot.x), half_width.x, N);
    g.y = make_axis(std::log(spot.y), half_width.y, J);
    g.M = M;
    g.T = model.params.T;
    g.dtau = g.T / M;
    return g;
}

TrapezoidWeights trapezoid_weights(const GridSpec& grid) {
    return {trapezoid_1d(grid.dagger_nx()), trapezoid_1d(grid.dagger_ny())};
}

}  // namespace bimerton
