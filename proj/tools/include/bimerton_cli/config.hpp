#pragma once

/**
 * @file config.hpp
 * @brief Run configuration: a flat, sectioned key = value text format.
 *
 *   # comment
 *   [model]   case = CaseI            (or every parameter spelled out)
 *   [option]  payoff = put_on_min     strike, X0, Y0, style
 *   [grid]    level = 0               (or N, J, M), half_width[_x|_y]
 *   [run]     epsilon, embed, planner, min_level, max_level, domain_scale,
 *             table_spots, allow_slow_levels, hold_timesteps
 *   [output]  dir, report, format, timings, surface_csv, kernel_csv, mask_csv, mask_pgm
 *
 * Unknown sections or keys are errors. See README for every key.
 */

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bimerton/cases.hpp"
#include "bimerton/convolve.hpp"
#include "bimerton/harness.hpp"
#include "bimerton/model.hpp"
#include "bimerton/payoff.hpp"
#include "bimerton/pricer.hpp"

namespace bimerton::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Environment variable that replaces [output] dir when set.
inline constexpr const char* kOutputDirEnv = "BIMERTON_OUTPUT_DIR";

struct RunConfig {
    std::optional<CaseId> case_id;  ///< empty when the model block is explicit
    ModelParams params;

    PayoffKind payoff = PayoffKind::PutOnMin;
    double strike = 0.0;
    Vec2 spot;
    ExerciseStyle style = ExerciseStyle::American;

    /// Refinement level when given; exclusive with explicit N, J, M. Without
    /// either, N, J and M come from level 0.
    std::optional<int> level;
    int N = 0;
    int J = 0;
    int M = 0;
    Vec2 half_width;

    std::optional<double> epsilon;
    EmbedMode embed = EmbedMode::Compact;
    PlannerEffort planner = PlannerEffort::Estimate;
    int min_level = 0;
    int max_level = 2;
    DomainScale domain_scale = DomainScale::Double;
    std::vector<double> table_spots;  ///< empty: the case's published spots
    bool allow_slow_levels = false;
    bool hold_timesteps = false;

    std::filesystem::path output_dir = ".";
    std::optional<std::filesystem::path> report;
    ReportFormat format = ReportFormat::Text;
    bool timings = false;
    std::optional<std::filesystem::path> surface_csv;
    std::optional<std::filesystem::path> kernel_csv;
    std::optional<std::filesystem::path> mask_csv;
    std::optional<std::filesystem::path> mask_pgm;

    /// Relative paths resolve against output_dir.
    std::filesystem::path resolve(const std::filesystem::path& p) const;

    /// Case spec built from this config (explicit params get a synthetic spec).
    CaseSpec case_spec() const;
    /// Grid for `price` / `region`: the level's N, J, M or the explicit ones.
    GridSpec grid() const;
    PricingOptions pricing() const;

    /// Sets level and the matching N, J, M.
    void set_level(int level);
};

/// Parses and validates. Does not consult the environment.
/// @throws ConfigError with the offending line number where there is one.
RunConfig parse_config(std::string_view text);

/// Reads the file, parses it and applies the output-directory override.
/// @throws ConfigError (unreadable files included).
RunConfig load_config(const std::filesystem::path& path);

/// Applies kOutputDirEnv if it is set and non-empty.
void apply_environment(RunConfig& config);

}  // namespace bimerton::cli
