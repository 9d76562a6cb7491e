#pragma once

/**
 * @file harness.hpp
 * @brief Convergence, domain-sensitivity and spot-grid studies over the named cases.
 */

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bimerton/array2d.hpp"
#include "bimerton/cases.hpp"
#include "bimerton/payoff.hpp"
#include "bimerton/pricer.hpp"
#include "bimerton/reference_data.hpp"

namespace bimerton {

/// Builds the spot-anchored grid for one refinement level.
GridSpec case_grid(const CaseSpec& spec, Vec2 spot, const RefinementLevel& level,
                   std::optional<Vec2> half_width = std::nullopt);

struct ConvergenceRow {
    int level = 0;
    int N = 0;
    int J = 0;
    int M = 0;
    double price = 0.0;
    std::optional<double> change;  ///< price - previous level's price
    std::optional<double> ratio;   ///< previous change / this change
    double seconds = 0.0;
};

struct StudyOptions {
    PricingOptions pricing;
    int min_level = 0;
    int max_level = 2;
    /// Keep M at min_level's value while N and J double (spatial-error diagnostic).
    bool hold_timesteps = false;
    std::optional<Vec2> half_width;  ///< overrides the case default
};

struct StudyReport {
    CaseId case_id = CaseId::CaseI;
    PayoffKind payoff = PayoffKind::PutOnMin;
    Vec2 spot;
    std::vector<ConvergenceRow> rows;
    std::optional<double> reference;     ///< external reference price, if published
    std::optional<double> max_abs_diff;  ///< max |price - published level price|
};

/// Fills change and ratio from consecutive prices; the first row gets neither,
/// the second gets only a change.
void annotate_changes(std::vector<ConvergenceRow>& rows);

/// Prices one spot at levels [min_level, max_level].
StudyReport convergence_study(const CaseSpec& spec, PayoffKind payoff, Vec2 spot,
                              const StudyOptions& options = {});

/// Least-squares slope of log(seconds) against log(M N J log2(N J)).
/// Near 1 when the run scales as expected. Empty with fewer than two timed rows.
std::optional<double> timing_slope(std::span<const ConvergenceRow> rows);

enum class DomainScale { Half, Double };

std::string_view to_string(DomainScale scale) noexcept;
DomainScale parse_domain_scale(std::string_view text);

struct DomainRow {
    int level = 0;
    int N = 0;         ///< base grid intervals
    int N_scaled = 0;  ///< scaled grid intervals (same mesh width)
    int M = 0;
    double base_price = 0.0;
    double scaled_price = 0.0;
    double diff = 0.0;  ///< |scaled - base|
    double seconds = 0.0;
};

struct DomainReport {
    CaseId case_id = CaseId::CaseI;
    PayoffKind payoff = PayoffKind::PutOnMin;
    Vec2 spot;
    DomainScale scale = DomainScale::Double;
    Vec2 base_half_width;
    Vec2 scaled_half_width;
    std::vector<DomainRow> rows;
};

/// Reprices with the interior box halved or doubled while holding dx, dy and dtau fixed.
DomainReport domain_study(const CaseSpec& spec, PayoffKind payoff, Vec2 spot, DomainScale scale,
                          const StudyOptions& options = {});

struct TableOptions {
    PricingOptions pricing;
    int level = 2;
    /// Levels above 2 take minutes per point; they must be requested explicitly.
    bool allow_slow_levels = false;
    std::optional<Vec2> half_width;  ///< overrides the case default
};

struct SpotGridReport {
    CaseId case_id = CaseId::CaseI;
    PayoffKind payoff = PayoffKind::PutOnMin;
    int level = 0;
    std::vector<double> xs;
    std::vector<double> ys;
    Array2D<double> prices;   ///< rows indexed by Y0, columns by X0
    Array2D<double> seconds;
    std::optional<reference::SpotTable> published;  ///< set when the spots match a published table
};

/// Prices every (X0, Y0) pair, each on its own grid anchored at that spot.
/// @throws std::invalid_argument for level > 2 without allow_slow_levels.
SpotGridReport comprehensive_table(const CaseSpec& spec, PayoffKind payoff,
                                   std::span<const double> xs, std::span<const double> ys,
                                   const TableOptions& options = {});
/// Same over the case's published 3x3 spot grid.
SpotGridReport comprehensive_table(const CaseSpec& spec, PayoffKind payoff,
                                   const TableOptions& options = {});

enum class ReportFormat { Csv, Text };

ReportFormat parse_report_format(std::string_view text);

/// CSV columns: level,N,J,M,price,change,ratio,seconds. The seconds column is
/// left blank unless include_timings is set, so repeated runs are byte-identical.
void emit_report(std::ostream& out, const StudyReport& report, ReportFormat format,
                 bool include_timings = false);
/// CSV columns: level,N,N_scaled,M,base_price,scaled_price,diff,seconds.
void emit_report(std::ostream& out, const DomainReport& report, ReportFormat format,
                 bool include_timings = false);
/// CSV columns: X0,Y0,price,published_price,external_price,seconds.
void emit_report(std::ostream& out, const SpotGridReport& report, ReportFormat format,
                 bool include_timings = false);

}  // namespace bimerton
