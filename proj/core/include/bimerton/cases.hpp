#pragma once

#include <string_view>

#include "bimerton/model.hpp"

namespace bimerton {

enum class CaseId { CaseI, CaseII, CaseIII };

/// A named parameter set: model, strike and default interior half-width
/// (same in x and y, in log-price units around the spot).
struct CaseSpec {
    CaseId id = CaseId::CaseI;
    ModelParams params;
    double strike = 0.0;
    double half_width = 0.0;
};

CaseSpec case_spec(CaseId id);
std::string_view to_string(CaseId id) noexcept;
/// Accepts CaseI / CaseII / CaseIII (case-insensitive, also "I", "2", "case3", ...).
CaseId parse_case_id(std::string_view text);

/// N = J = 2^(8+level), M = 50 * 2^level.
struct RefinementLevel {
    int level = 0;
    int N = 0;
    int J = 0;
    int M = 0;
};

inline constexpr int kMaxRefinementLevel = 4;

/// @throws std::invalid_argument outside [0, kMaxRefinementLevel].
RefinementLevel refinement_level(int level);

}  // namespace bimerton
