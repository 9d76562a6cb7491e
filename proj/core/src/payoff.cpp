#include "bimerton/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bimerton {

double Payoff::operator()(double x, double y) const noexcept {
    double underlying = 0.0;
    switch (kind) {
        case PayoffKind::PutOnMin:
            underlying = std::exp(std::min(x, y));
            break;
        case PayoffKind::PutOnAverage:
            underlying = 0.5 * (std::exp(x) + std::exp(y));
            break;
    }
    return std::max(strike - underlying, 0.0);
}

void validate(const Payoff& payoff) {
    if (!std::isfinite(payoff.strike) || payoff.strike <= 0.0)
        throw std::invalid_argument("Payoff.strike: must be finite and > 0");
}

std::string_view to_string(PayoffKind kind) noexcept {
    switch (kind) {
        case PayoffKind::PutOnMin: return "put_on_min";
        case PayoffKind::PutOnAverage: return "put_on_average";
    }
    return "unknown";
}

PayoffKind parse_payoff_kind(std::string_view text) {
    std::string s(text);
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "put_on_min") return PayoffKind::PutOnMin;
    if (s == "put_on_average" || s == "put_on_avg") return PayoffKind::PutOnAverage;
    throw std::invalid_argument("unknown payoff kind '" + std::string(text) + "'");
}

}  // namespace bimerton
