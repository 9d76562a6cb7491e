#include "bimerton/cases.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace bimerton {

CaseSpec case_spec(CaseId id) {
    CaseSpec c;
    c.id = id;
    ModelParams& p = c.params;
    p.r = 0.05;
    switch (id) {
        case CaseId::CaseI:
            p.sigma_x = 0.12; p.sigma_y = 0.15; p.rho = 0.30;
            p.lambda = 0.6;
            p.mu_jx = -0.10; p.mu_jy = 0.10;
            p.sigma_jx = 0.17; p.sigma_jy = 0.13; p.rho_j = -0.20;
            p.T = 1.0;
            c.strike = 100.0;
            c.half_width = 1.5;
            break;
        case CaseId::CaseII:
            p.sigma_x = 0.30; p.sigma_y = 0.30; p.rho = 0.50;
            p.lambda = 2.0;
            p.mu_jx = -0.50; p.mu_jy = 0.30;
            p.sigma_jx = 0.40; p.sigma_jy = 0.10; p.rho_j = -0.60;
            p.T = 0.5;
            c.strike = 40.0;
            c.half_width = 3.0;
            break;
        case CaseId::CaseIII:
            p.sigma_x = 0.20; p.sigma_y = 0.30; p.rho = 0.70;
            p.lambda = 8.0;
            p.mu_jx = -0.05; p.mu_jy = -0.20;
            p.sigma_jx = 0.45; p.sigma_jy = 0.06; p.rho_j = 0.50;
            p.T = 1.0;
            c.strike = 40.0;
            c.half_width = 6.0;
            break;
    }
    return c;
}

std::string_view to_string(CaseId id) noexcept {
    switch (id) {
        case CaseId::CaseI: return "CaseI";
        case CaseId::CaseII: return "CaseII";
        case CaseId::CaseIII: return "CaseIII";
    }
    return "?";
}

CaseId parse_case_id(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (ch == '_' || ch == '-' || ch == ' ') continue;
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    if (s.starts_with("case")) s.erase(0, 4);
    if (s == "i" || s == "1") return CaseId::CaseI;
    if (s == "ii" || s == "2") return CaseId::CaseII;
    if (s == "iii" || s == "3") return CaseId::CaseIII;
    throw std::invalid_argument("unknown case '" + std::string(text) + "' (expected CaseI, CaseII or CaseIII)");
}

RefinementLevel refinement_level(int level) {
    if (level < 0 || level > kMaxRefinementLevel)
        throw std::invalid_argument("refinement level must be in [0, " +
                                    std::to_string(kMaxRefinementLevel) + "], got " +
                                    std::to_string(level));
    const int n = 1 << (8 + level);
    return {level, n, n, 50 * (1 << level)};
}

}  // namespace bimerton
