#pragma once

#include <string_view>

namespace bimerton {

enum class PayoffKind { PutOnMin, PutOnAverage };

/// Bounded two-asset put payoffs evaluated in log-price coordinates.
struct Payoff {
    PayoffKind kind = PayoffKind::PutOnMin;
    double strike = 0.0;

    /// max(K - min(e^x, e^y), 0) or max(K - (e^x + e^y)/2, 0).
    double operator()(double x, double y) const noexcept;
};

/// Same as payoff(x, y); free-function spelling used across the codebase.
inline double payoff_eval(const Payoff& payoff, double x, double y) noexcept { return payoff(x, y); }

/// Throws std::invalid_argument unless strike is finite and positive.
void validate(const Payoff& payoff);

std::string_view to_string(PayoffKind kind) noexcept;
/// Accepts "put_on_min" / "put_on_average" (also dashed spellings).
PayoffKind parse_payoff_kind(std::string_view text);

}  // namespace bimerton
