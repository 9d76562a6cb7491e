#include "bimerton/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>

namespace bimerton {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

std::string opt_num(const std::optional<double>& v, const char* pattern) {
    return v ? fmt(pattern, *v) : std::string();
}

std::string lower(std::string_view text) {
    std::string s(text);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

struct Timed {
    double price;
    double seconds;
};

Timed price_at(const DerivedModel& model, const Payoff& payoff, const GridSpec& grid,
               const PricingOptions& options) {
    const auto t0 = Clock::now();
    const PriceResult res = price(model, payoff, grid, options);
    return {res.price, elapsed(t0)};
}

void check_levels(const StudyOptions& o) {
    if (o.min_level < 0 || o.max_level > kMaxRefinementLevel || o.min_level > o.max_level)
        throw std::invalid_argument("study levels must satisfy 0 <= min_level <= max_level <= " +
                                    std::to_string(kMaxRefinementLevel));
}

std::string heading(CaseId id, PayoffKind payoff, Vec2 spot) {
    return std::string(to_string(id)) + " " + std::string(to_string(payoff)) +
           fmt(" at (%g, %g)", spot.x, spot.y);
}

}  // namespace

GridSpec case_grid(const CaseSpec& spec, Vec2 spot, const RefinementLevel& level,
                   std::optional<Vec2> half_width) {
    const Vec2 hw = half_width.value_or(Vec2{spec.half_width, spec.half_width});
    return build_grid(validate(spec.params), spot, hw, level.N, level.J, level.M);
}

void annotate_changes(std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].change.reset();
        rows[i].ratio.reset();
        if (i == 0) continue;
        rows[i].change = rows[i].price - rows[i - 1].price;
        if (rows[i - 1].change && *rows[i].change != 0.0)
            rows[i].ratio = *rows[i - 1].change / *rows[i].change;
    }
}

StudyReport convergence_study(const CaseSpec& spec, PayoffKind payoff_kind, Vec2 spot,
                              const StudyOptions& options) {
    check_levels(options);
    const DerivedModel model = validate(spec.params);
    const Payoff payoff{payoff_kind, spec.strike};
    const Vec2 hw = options.half_width.value_or(Vec2{spec.half_width, spec.half_width});

    StudyReport report;
    report.case_id = spec.id;
    report.payoff = payoff_kind;
    report.spot = spot;

    const auto published = reference::convergence_table(spec.id, payoff_kind);
    const bool matches = published && published->spot == spot &&
                         hw == Vec2{spec.half_width, spec.half_width} &&
                         !options.hold_timesteps;
    if (published && published->spot == spot) report.reference = published->external_reference;

    const int held_M = refinement_level(options.min_level).M;
    for (int l = options.min_level; l <= options.max_level; ++l) {
        RefinementLevel lv = refinement_level(l);
        if (options.hold_timesteps) lv.M = held_M;
        const GridSpec grid = build_grid(model, spot, hw, lv.N, lv.J, lv.M);
        const Timed t = price_at(model, payoff, grid, options.pricing);

        report.rows.push_back({l, lv.N, lv.J, lv.M, t.price, {}, {}, t.seconds});

        if (matches) {
            const double d = std::abs(t.price - published->level_prices[static_cast<std::size_t>(l)]);
            report.max_abs_diff = std::max(report.max_abs_diff.value_or(0.0), d);
        }
    }
    annotate_changes(report.rows);
    return report;
}

std::optional<double> timing_slope(std::span<const ConvergenceRow> rows) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        if (r.seconds <= 0.0) continue;
        const double nj = static_cast<double>(r.N) * r.J;
        const double work = static_cast<double>(r.M) * nj * std::log2(nj);
        pts.emplace_back(std::log(work), std::log(r.seconds));
    }
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

std::string_view to_string(DomainScale scale) noexcept {
    return scale == DomainScale::Half ? "half" : "double";
}

DomainScale parse_domain_scale(std::string_view text) {
    const std::string s = lower(text);
    if (s == "half" || s == "smaller" || s == "0.5") return DomainScale::Half;
    if (s == "double" || s == "larger" || s == "2") return DomainScale::Double;
    throw std::invalid_argument("unknown domain scale '" + std::string(text) +
                                "' (expected half or double)");
}

DomainReport domain_study(const CaseSpec& spec, PayoffKind payoff_kind, Vec2 spot,
                          DomainScale scale, const StudyOptions& options) {
    check_levels(options);
    const DerivedModel model = validate(spec.params);
    const Payoff payoff{payoff_kind, spec.strike};

    DomainReport report;
    report.case_id = spec.id;
    report.payoff = payoff_kind;
    report.spot = spot;
    report.scale = scale;
    report.base_half_width = options.half_width.value_or(Vec2{spec.half_width, spec.half_width});
    report.scaled_half_width = (scale == DomainScale::Double ? 2.0 : 0.5) * report.base_half_width;
    const Vec2 hw = report.base_half_width;
    const Vec2 shw = report.scaled_half_width;

    const int held_M = refinement_level(options.min_level).M;
    for (int l = options.min_level; l <= options.max_level; ++l) {
        RefinementLevel lv = refinement_level(l);
        if (options.hold_timesteps) lv.M = held_M;
        const int sN = scale == DomainScale::Double ? 2 * lv.N : lv.N / 2;
        const int sJ = scale == DomainScale::Double ? 2 * lv.J : lv.J / 2;

        const GridSpec base = build_grid(model, spot, hw, lv.N, lv.J, lv.M);
        const GridSpec scaled = build_grid(model, spot, shw, sN, sJ, lv.M);
        const Timed b = price_at(model, payoff, base, options.pricing);
        const Timed s = price_at(model, payoff, scaled, options.pricing);
        report.rows.push_back({l, lv.N, sN, lv.M, b.price, s.price, std::abs(s.price - b.price),
                               b.seconds + s.seconds});
    }
    return report;
}

SpotGridReport comprehensive_table(const CaseSpec& spec, PayoffKind payoff_kind,
                                   std::span<const double> xs, std::span<const double> ys,
                                   const TableOptions& options) {
    if (xs.empty() || ys.empty()) throw std::invalid_argument("spot lists must be non-empty");
    const RefinementLevel lv = refinement_level(options.level);
    if (options.level > 2) {
        if (!options.allow_slow_levels)
            throw std::invalid_argument("table level " + std::to_string(options.level) +
                                        " is slow; pass the allow-slow-levels flag to run it");
        std::cerr << "warning: table at level " << options.level << " prices " << xs.size() * ys.size()
                  << " points on " << lv.N << "x" << lv.J << " grids with " << lv.M
                  << " steps each; expect a long run\n";
    }
    const DerivedModel model = validate(spec.params);
    const Payoff payoff{payoff_kind, spec.strike};
    const Vec2 hw = options.half_width.value_or(Vec2{spec.half_width, spec.half_width});

    SpotGridReport report;
    report.case_id = spec.id;
    report.payoff = payoff_kind;
    report.level = options.level;
    report.xs.assign(xs.begin(), xs.end());
    report.ys.assign(ys.begin(), ys.end());
    report.prices = Array2D<double>(ys.size(), xs.size());
    report.seconds = Array2D<double>(ys.size(), xs.size());

    for (std::size_t i = 0; i < ys.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const GridSpec grid = build_grid(model, {xs[j], ys[i]}, hw, lv.N, lv.J, lv.M);
            const Timed t = price_at(model, payoff, grid, options.pricing);
            report.prices(i, j) = t.price;
            report.seconds(i, j) = t.seconds;
        }
    }

    reference::SpotTable pub = reference::spot_table(spec.id, payoff_kind);
    if (std::equal(xs.begin(), xs.end(), pub.spots.begin(), pub.spots.end()) &&
        std::equal(ys.begin(), ys.end(), pub.spots.begin(), pub.spots.end()))
        report.published = std::move(pub);
    return report;
}

SpotGridReport comprehensive_table(const CaseSpec& spec, PayoffKind payoff,
                                   const TableOptions& options) {
    const auto spots = reference::spot_table(spec.id, payoff).spots;
    return comprehensive_table(spec, payoff, spots, spots, options);
}

ReportFormat parse_report_format(std::string_view text) {
    const std::string s = lower(text);
    if (s == "csv") return ReportFormat::Csv;
    if (s == "text" || s == "txt") return ReportFormat::Text;
    throw std::invalid_argument("unknown report format '" + std::string(text) +
                                "' (expected csv or text)");
}

void emit_report(std::ostream& out, const StudyReport& report, ReportFormat format,
                 bool include_timings) {
    if (format == ReportFormat::Csv) {
        out << "level,N,J,M,price,change,ratio,seconds\n";
        for (const auto& r : report.rows) {
            out << r.level << ',' << r.N << ',' << r.J << ',' << r.M << ','
                << fmt("%.10f", r.price) << ',' << opt_num(r.change, "%.6e") << ','
                << opt_num(r.ratio, "%.6f") << ','
                << (include_timings ? fmt("%.6f", r.seconds) : std::string()) << '\n';
        }
        return;
    }
    out << heading(report.case_id, report.payoff, report.spot) << '\n';
    out << fmt("%5s %6s %6s %5s %14s %12s %8s", "level", "N", "J", "M", "price", "change", "ratio");
    if (include_timings) out << fmt(" %10s", "seconds");
    out << '\n';
    for (const auto& r : report.rows) {
        out << fmt("%5d %6d %6d %5d %14.6f %12s %8s", r.level, r.N, r.J, r.M, r.price,
                   r.change ? fmt("%.2e", *r.change).c_str() : "",
                   r.ratio ? fmt("%.2f", *r.ratio).c_str() : "");
        if (include_timings) out << fmt(" %10.3f", r.seconds);
        out << '\n';
    }
    if (report.reference) out << fmt("reference price: %.3f\n", *report.reference);
    if (report.max_abs_diff) out << fmt("max |price - published|: %.3e\n", *report.max_abs_diff);
    if (include_timings)
        if (auto s = timing_slope(report.rows)) out << fmt("timing slope vs M*N*J*log(NJ): %.2f\n", *s);
}

void emit_report(std::ostream& out, const DomainReport& report, ReportFormat format,
                 bool include_timings) {
    if (format == ReportFormat::Csv) {
        out << "level,N,N_scaled,M,base_price,scaled_price,diff,seconds\n";
        for (const auto& r : report.rows) {
            out << r.level << ',' << r.N << ',' << r.N_scaled << ',' << r.M << ','
                << fmt("%.10f", r.base_price) << ',' << fmt("%.10f", r.scaled_price) << ','
                << fmt("%.6e", r.diff) << ','
                << (include_timings ? fmt("%.6f", r.seconds) : std::string()) << '\n';
        }
        return;
    }
    out << heading(report.case_id, report.payoff, report.spot)
        << fmt(", half-width (%g, %g) -> (%g, %g) (%s)\n", report.base_half_width.x,
               report.base_half_width.y, report.scaled_half_width.x, report.scaled_half_width.y,
               std::string(to_string(report.scale)).c_str());
    out << fmt("%5s %6s %8s %5s %14s %14s %10s", "level", "N", "N_scaled", "M", "base", "scaled", "diff");
    if (include_timings) out << fmt(" %10s", "seconds");
    out << '\n';
    for (const auto& r : report.rows) {
        out << fmt("%5d %6d %8d %5d %14.6f %14.6f %10.2e", r.level, r.N, r.N_scaled, r.M,
                   r.base_price, r.scaled_price, r.diff);
        if (include_timings) out << fmt(" %10.3f", r.seconds);
        out << '\n';
    }
}

void emit_report(std::ostream& out, const SpotGridReport& report, ReportFormat format,
                 bool include_timings) {
    const auto* pub = report.published ? &*report.published : nullptr;
    if (format == ReportFormat::Csv) {
        out << "X0,Y0,price,published_price,external_price,seconds\n";
        for (std::size_t i = 0; i < report.ys.size(); ++i) {
            for (std::size_t j = 0; j < report.xs.size(); ++j) {
                out << fmt("%g", report.xs[j]) << ',' << fmt("%g", report.ys[i]) << ','
                    << fmt("%.10f", report.prices(i, j)) << ','
                    << (pub ? fmt("%.6f", pub->computed(i, j)) : std::string()) << ','
                    << (pub ? fmt("%.3f", pub->external(i, j)) : std::string()) << ','
                    << (include_timings ? fmt("%.6f", report.seconds(i, j)) : std::string())
                    << '\n';
            }
        }
        return;
    }
    out << to_string(report.case_id) << ' ' << to_string(report.payoff) << ", level "
        << report.level << " (rows Y0, columns X0)\n";
    out << fmt("%8s", "Y0\\X0");
    for (double x : report.xs) out << fmt(" %12g", x);
    out << '\n';
    for (std::size_t i = 0; i < report.ys.size(); ++i) {
        out << fmt("%8g", report.ys[i]);
        for (std::size_t j = 0; j < report.xs.size(); ++j) out << fmt(" %12.6f", report.prices(i, j));
        out << '\n';
    }
    if (pub) {
        double d_pub = 0.0, d_ext = 0.0;
        for (std::size_t i = 0; i < report.ys.size(); ++i)
            for (std::size_t j = 0; j < report.xs.size(); ++j) {
                d_pub = std::max(d_pub, std::abs(report.prices(i, j) - pub->computed(i, j)));
                d_ext = std::max(d_ext, std::abs(report.prices(i, j) - pub->external(i, j)));
            }
        out << fmt("max |price - published|: %.3e\n", d_pub);
        out << fmt("max |price - external reference|: %.3e\n", d_ext);
    }
}

}  // namespace bimerton
