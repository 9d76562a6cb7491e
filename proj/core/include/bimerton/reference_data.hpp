#pragma once

// Published prices used as golden values by the harness and the acceptance
// suite. Tolerances live with the callers, not here.

#include <array>
#include <optional>
#include <vector>

#include "bimerton/array2d.hpp"
#include "bimerton/cases.hpp"
#include "bimerton/model.hpp"
#include "bimerton/payoff.hpp"

namespace bimerton::reference {

/// Monotone-integration prices at refinement levels 0-4 plus an external
/// finite-difference reference, for one (case, payoff, spot).
struct ConvergenceTable {
    CaseId case_id;
    PayoffKind payoff;
    Vec2 spot;
    std::array<double, 5> level_prices;
    double external_reference;
};

/// Absolute price differences when the interior box is doubled / halved
/// at constant mesh width, per refinement level.
struct DomainTable {
    CaseId case_id;
    PayoffKind payoff;
    Vec2 spot;
    std::array<double, 5> larger_diff;
    std::array<double, 5> smaller_diff;
};

/// 3x3 spot grid: rows indexed by Y0, columns by X0.
struct SpotTable {
    CaseId case_id;
    PayoffKind payoff;
    std::array<double, 3> spots;
    Array2D<double> computed;   ///< monotone-integration prices
    Array2D<double> external;   ///< finite-difference reference prices
};

std::optional<ConvergenceTable> convergence_table(CaseId id, PayoffKind payoff);
std::optional<DomainTable> domain_table(CaseId id, PayoffKind payoff);
SpotTable spot_table(CaseId id, PayoffKind payoff);

}  // namespace bimerton::reference
