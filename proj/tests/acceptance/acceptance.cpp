// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: bimerton_acceptance [criterion ids...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bimerton/cases.hpp"
#include "bimerton/convolve.hpp"
#include "bimerton/harness.hpp"
#include "bimerton/kernel.hpp"
#include "bimerton/pricer.hpp"
#include "bimerton/reference_data.hpp"
#include "oracles.hpp"

using namespace bimerton;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back((ok ? "" : "FAILED ") + what);
    }
};

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

constexpr CaseId kCases[] = {CaseId::CaseI, CaseId::CaseII, CaseId::CaseIII};

const char* name(CaseId id) { return to_string(id).data(); }

double max_abs(const Array2D<double>& a) {
    double m = 0.0;
    for (double v : a.flat()) m = std::max(m, std::abs(v));
    return m;
}

double max_diff(const Array2D<double>& a, const Array2D<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
    return m;
}

// ---- 1, 2: refinement studies against published level prices ---------------

void convergence_against_published(Outcome& o, PayoffKind payoff, bool check_external) {
    const auto table = reference::convergence_table(CaseId::CaseI, payoff);
    StudyOptions opts;
    opts.max_level = 2;
    const StudyReport r = convergence_study(case_spec(CaseId::CaseI), payoff, table->spot, opts);
    constexpr double kTol = 5e-4;
    for (const auto& row : r.rows) {
        const double want = table->level_prices[static_cast<std::size_t>(row.level)];
        const double d = std::abs(row.price - want);
        o.check(d <= kTol, fmt("level %d: %.6f vs %.6f (|diff| %.2e, tol %.0e, %.1f s)", row.level,
                               row.price, want, d, kTol, row.seconds));
    }
    if (!check_external) {
        const auto ratio = r.rows.back().ratio;
        o.check(ratio && *ratio >= 1.8 && *ratio <= 2.6,
                fmt("level-2 ratio %.3f in [1.8, 2.6]", ratio.value_or(NAN)));
    } else {
        const double d = std::abs(r.rows.back().price - table->external_reference);
        o.check(d < 5e-3, fmt("|level-2 price - external %.3f| = %.2e < 5e-3",
                              table->external_reference, d));
        if (auto ratio = r.rows.back().ratio) o.notes.push_back(fmt("level-2 ratio %.3f", *ratio));
    }
}

Outcome criterion1() {
    Outcome o;
    convergence_against_published(o, PayoffKind::PutOnMin, false);
    return o;
}

Outcome criterion2() {
    Outcome o;
    convergence_against_published(o, PayoffKind::PutOnAverage, true);
    return o;
}

// ---- 3: domain sensitivity -------------------------------------------------

Outcome criterion3() {
    Outcome o;
    const CaseSpec c = case_spec(CaseId::CaseI);
    const auto pub = reference::domain_table(CaseId::CaseI, PayoffKind::PutOnMin);
    StudyOptions opts;
    opts.max_level = 0;
    const auto larger = domain_study(c, PayoffKind::PutOnMin, pub->spot, DomainScale::Double, opts);
    const auto smaller = domain_study(c, PayoffKind::PutOnMin, pub->spot, DomainScale::Half, opts);
    const double dl = larger.rows[0].diff;
    const double ds = smaller.rows[0].diff;
    o.check(dl < 1e-6, fmt("doubled domain: |diff| %.2e < 1e-6 (published %.2e)", dl, pub->larger_diff[0]));
    o.check(ds > 1e-4, fmt("halved domain: |diff| %.2e > 1e-4 (published %.2e)", ds, pub->smaller_diff[0]));
    return o;
}

// ---- 4: spot checks at level 2 ---------------------------------------------

Outcome criterion4() {
    Outcome o;
    struct Spot {
        CaseId id;
        PayoffKind payoff;
        double tol;
        std::optional<double> exact;
    };
    const Spot spots[] = {
        {CaseId::CaseII, PayoffKind::PutOnMin, 1e-2, std::nullopt},
        {CaseId::CaseIII, PayoffKind::PutOnAverage, 1e-2, std::nullopt},
        {CaseId::CaseI, PayoffKind::PutOnAverage, 1e-6, 10.0},
    };
    for (const auto& s : spots) {
        const auto table = reference::spot_table(s.id, s.payoff);
        const std::vector<double> xs{table.spots[0]};
        TableOptions opts;
        opts.level = 2;
        const auto r = comprehensive_table(case_spec(s.id), s.payoff, xs, xs, opts);
        const double got = r.prices(0, 0);
        const double want = s.exact.value_or(table.computed(0, 0));
        const double d = std::abs(got - want);
        o.check(d <= s.tol, fmt("%s %s (%g, %g): %.6f vs %.6f (|diff| %.2e, tol %.0e, external %.3f)",
                                name(s.id), to_string(s.payoff).data(), xs[0], xs[0], got, want, d,
                                s.tol, table.external(0, 0)));
    }
    return o;
}

// ---- 5: kernel properties --------------------------------------------------

Outcome criterion5() {
    Outcome o;
    std::mt19937_64 rng(2024);
    for (CaseId id : kCases) {
        const CaseSpec c = case_spec(id);
        const DerivedModel m = validate(c.params);
        for (int level = 0; level <= 2; ++level) {
            const GridSpec g = case_grid(c, {c.strike, c.strike}, refinement_level(level));
            const KernelArray k = build_kernel(m, g, default_epsilon(g.dtau));

            std::size_t negative = 0;
            for (double w : k.weights.flat()) negative += w < 0.0;

            const TrapezoidWeights phi = trapezoid_weights(g);
            const double disc = std::exp(-c.params.r * g.dtau);
            const int e = g.N() / 2 - 1;
            double lo = INFINITY, hi = -INFINITY;
            for (auto [n, j] : {std::pair{0, 0}, {e, e}, {-e, -e}, {e, -e}, {-e, e}}) {
                const double mass = kernel_mass(k, phi, n, j);
                lo = std::min(lo, mass);
                hi = std::max(hi, mass);
            }

            const double bound = 10.0 * truncation_test(m, g.dtau, k.K);
            std::uniform_int_distribution<int> px(-3 * g.N() / 2 + 1, 3 * g.N() / 2 - 1);
            std::uniform_int_distribution<int> py(-3 * g.J() / 2 + 1, 3 * g.J() / 2 - 1);
            double worst = 0.0;
            for (int s = 0; s < 10'000; ++s) {
                const Vec2 z{px(rng) * g.dx(), py(rng) * g.dy()};
                double tail = 0.0;
                for (int kk = k.K + 1; kk <= k.K + 10; ++kk) tail += eval_series_term(m, g.dtau, kk, z);
                worst = std::max(worst, tail);
            }

            const bool ok = negative == 0 && lo >= disc - 1e-3 && hi <= disc + 1e-4 && worst < bound;
            o.check(ok, fmt("%s level %d: K=%d, negatives %zu, mass [%.8f, %.8f] vs e^{-r dtau} %.8f, "
                            "max residual %.2e < %.2e",
                            name(id), level, k.K, negative, lo, hi, disc, worst, bound));
        }
    }
    return o;
}

// ---- 6: FFT path against direct summation ----------------------------------

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(77);
    const CaseSpec c = case_spec(CaseId::CaseI);
    const DerivedModel m = validate(c.params);
    for (int N : {8, 16, 32}) {
        const GridSpec g = build_grid(m, {90.0, 90.0}, {0.5, 0.5}, N, N, 10);
        const KernelArray k = build_kernel(m, g, default_epsilon(g.dtau));
        const TrapezoidWeights phi = trapezoid_weights(g);
        const SpectralKernel exact = plan(k, g, EmbedMode::Exact);
        const SpectralKernel compact = plan(k, g, EmbedMode::Compact);
        const SpectralKernel padded = plan(k, g, EmbedMode::Padded);
        double fft_vs_direct = 0.0, exact_vs_padded = 0.0;
        for (int s = 0; s < 20; ++s) {
            const ValueSurface v{oracle::random_surface(g.dagger_nx(), g.dagger_ny(), rng, 0.0, c.strike), 0, g.dtau};
            const auto direct = convolve_direct(k, v, phi);
            const double scale = max_abs(direct);
            const auto ue = convolve_step(exact, v, phi);
            const auto uc = convolve_step(compact, v, phi);
            const auto up = convolve_step(padded, v, phi);
            fft_vs_direct = std::max({fft_vs_direct, max_diff(ue, direct) / scale,
                                      max_diff(uc, direct) / scale, max_diff(up, direct) / scale});
            exact_vs_padded = std::max(exact_vs_padded, max_diff(ue, up) / scale);
        }
        o.check(fft_vs_direct <= 1e-12,
                fmt("N=J=%d: FFT vs direct max relative diff %.2e <= 1e-12 (20 surfaces, 3 embeddings)", N, fft_vs_direct));
        o.check(exact_vs_padded <= 1e-12,
                fmt("N=J=%d: exact vs padded max relative diff %.2e <= 1e-12", N, exact_vs_padded));
    }

    // full American run, N = J = 32, with the direct sum standing in for the FFT
    const GridSpec g = build_grid(m, {90.0, 90.0}, {0.5, 0.5}, 32, 32, 4);
    const Payoff payoff{PayoffKind::PutOnMin, c.strike};
    const PriceResult fft = price(m, payoff, g);

    const KernelArray k = build_kernel(m, g, default_epsilon(g.dtau));
    const TrapezoidWeights phi = trapezoid_weights(g);
    const Array2D<double> pay = payoff_grid(payoff, g);
    ValueSurface v{pay, 0, g.dtau};
    for (int step = 0; step < g.M; ++step) {
        const auto u = convolve_direct(k, v, phi);
        for (int n = -15; n <= 15; ++n)
            for (int d = -15; d <= 15; ++d)
                v.at_node(n, d) = std::max(u(static_cast<std::size_t>(n + 15), static_cast<std::size_t>(d + 15)),
                                           pay(static_cast<std::size_t>(n + 32), static_cast<std::size_t>(d + 32)));
        ++v.m;
        apply_boundary(v, pay, c.params.r, v.m * g.dtau);
    }
    const double dp = std::abs(fft.price - v.at_node(0, 0));
    const double ds = max_diff(fft.surface.values, v.values);
    o.check(dp <= 1e-10 && ds <= 1e-10,
            fmt("American N=J=32: FFT %.12f vs direct %.12f (|diff| %.2e, surface max %.2e, tol 1e-10)",
                fft.price, v.at_node(0, 0), dp, ds));
    return o;
}

// ---- 7: scheme properties at level 0 ---------------------------------------

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(99);
    for (CaseId id : kCases) {
        const CaseSpec c = case_spec(id);
        const DerivedModel m = validate(c.params);
        const double K = c.strike;
        // ordering checks on FFT output carry round-off of order 1e-16 * K per step
        const double roundoff = 1e-12 * K;

        for (PayoffKind pk : {PayoffKind::PutOnMin, PayoffKind::PutOnAverage}) {
            const Payoff payoff{pk, K};
            const GridSpec g = case_grid(c, {K, K}, refinement_level(0));
            const KernelArray k = build_kernel(m, g, default_epsilon(g.dtau));
            const SpectralKernel spec = plan(k, g);
            const TrapezoidWeights phi = trapezoid_weights(g);
            const Array2D<double> pay = payoff_grid(payoff, g);
            ConvolutionWorkspace wa(spec), we(spec);
            StepContext ca{spec, phi, pay, c.params.r, wa};
            StepContext ce{spec, phi, pay, c.params.r, we};
            ValueSurface am{pay, 0, g.dtau}, eu{pay, 0, g.dtau};

            std::size_t obstacle_violations = 0, order_violations = 0;
            double worst_order = 0.0, sup = 0.0;
            for (int step = 0; step < g.M; ++step) {
                step_american(am, ca);
                step_european(eu, ce);
                for (int n = -g.N() / 2 + 1; n < g.N() / 2; ++n)
                    for (int d = -g.J() / 2 + 1; d < g.J() / 2; ++d)
                        obstacle_violations += am.at_node(n, d) < pay(static_cast<std::size_t>(n + g.N()),
                                                                      static_cast<std::size_t>(d + g.J()));
                for (std::size_t i = 0; i < am.values.size(); ++i) {
                    const double gap = am.values.flat()[i] - eu.values.flat()[i];
                    worst_order = std::min(worst_order, gap);
                    order_violations += gap < -roundoff;
                    sup = std::max({sup, std::abs(am.values.flat()[i]), std::abs(eu.values.flat()[i])});
                }
            }
            o.check(obstacle_violations == 0,
                    fmt("%s %s: American >= payoff on interior at every step (%zu violations)", name(id),
                        to_string(pk).data(), obstacle_violations));
            o.check(order_violations == 0,
                    fmt("%s %s: American >= European at every node and step (min gap %.2e, tol -%.0e)",
                        name(id), to_string(pk).data(), worst_order, roundoff));
            o.check(sup <= (1.0 + 1e-3) * K,
                    fmt("%s %s: max|v| %.6f <= (1+1e-3) K = %.6f", name(id), to_string(pk).data(), sup,
                        (1.0 + 1e-3) * K));
        }

        // monotone step over random ordered pairs
        {
            const Payoff payoff{PayoffKind::PutOnMin, K};
            const GridSpec g = case_grid(c, {K, K}, refinement_level(0));
            const KernelArray k = build_kernel(m, g, default_epsilon(g.dtau));
            const SpectralKernel spec = plan(k, g);
            const TrapezoidWeights phi = trapezoid_weights(g);
            const Array2D<double> pay = payoff_grid(payoff, g);
            ConvolutionWorkspace ws(spec);
            StepContext ctx{spec, phi, pay, c.params.r, ws};
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::size_t broken = 0;
            double worst = 0.0;
            for (int pair = 0; pair < 100; ++pair) {
                ValueSurface lo{oracle::random_surface(g.dagger_nx(), g.dagger_ny(), rng, 0.0, K), 0, g.dtau};
                ValueSurface hi = lo;
                for (auto& v : hi.values.flat())
                    if (unit(rng) < 0.7) v += 0.1 * K * unit(rng);
                step_american(lo, ctx);
                step_american(hi, ctx);
                for (std::size_t i = 0; i < lo.values.size(); ++i) {
                    const double gap = hi.values.flat()[i] - lo.values.flat()[i];
                    worst = std::min(worst, gap);
                    broken += gap < -roundoff;
                }
            }
            o.check(broken == 0, fmt("%s: 100 ordered pairs stay ordered after one step (min gap %.2e, tol -%.0e)",
                                     name(id), worst, roundoff));
        }

        // Fourier cross-checks
        {
            const auto psi0 = fourier_symbol(m, {0.0, 0.0});
            const double e0 = std::abs(psi0 - std::complex<double>(-c.params.r, 0.0));
            o.check(e0 <= 1e-14, fmt("%s: |Psi(0,0) + r| = %.1e", name(id), e0));

            const GridSpec g = case_grid(c, {K, K}, refinement_level(0));
            const KernelArray k = build_kernel(m, g, default_epsilon(g.dtau));
            double worst = 0.0, symbol = 0.0;
            for (int a = -2; a <= 2; ++a)
                for (int b = -2; b <= 2; ++b) {
                    const Vec2 eta{static_cast<double>(a), static_cast<double>(b)};
                    const auto psi = fourier_symbol(m, eta);
                    symbol = std::max(symbol, std::abs(psi - oracle::char_exponent(c.params, eta.x, eta.y)));
                    worst = std::max(worst, std::abs(sampled_transform(k, eta) - std::exp(psi * g.dtau)));
                }
            o.check(worst <= 1e-3 && symbol <= 1e-12,
                    fmt("%s: sampled kernel transform vs exp(Psi dtau) at 25 frequencies, max %.2e <= 1e-3 "
                        "(symbol vs oracle %.1e)", name(id), worst, symbol));
        }
    }
    return o;
}

// ---- 8: truncation order ---------------------------------------------------

Outcome criterion8() {
    Outcome o;
    const ModelParams p = case_spec(CaseId::CaseI).params;
    const int lib = select_truncation_K(validate(p), 0.02, 1e-10);
    const int ora = oracle::truncation_order(p.r, p.lambda, p.sigma_x, p.sigma_y, p.rho, 0.02, 1e-10);
    o.check(lib == 5 && ora == 5, fmt("CaseI dtau=0.02 eps=1e-10: K=%d (independent loop %d, expected 5)", lib, ora));

    CaseSpec c = case_spec(CaseId::CaseI);
    c.params.lambda = 0.0;
    const DerivedModel m = validate(c.params);
    const GridSpec g = case_grid(c, {90.0, 90.0}, refinement_level(0));
    const PriceResult r = price(m, {PayoffKind::PutOnMin, c.strike}, g);
    const KernelArray k = build_kernel(m, g, default_epsilon(g.dtau));
    double gauss = 0.0;
    for (int a : {-10, 0, 7})
        for (int b : {-3, 0, 12}) {
            const double want = g.dx() * g.dy() * oracle::merton_density(c.params, g.dtau, 0, a * g.dx(), b * g.dy());
            gauss = std::max(gauss, std::abs(k.at_displacement(a, b) - want) / want);
        }
    o.check(r.K == 0 && k.K == 0 && std::isfinite(r.price) && r.price >= 10.0 && gauss < 1e-12,
            fmt("lambda=0: K=%d, level-0 put-on-min price %.6f, kernel vs Gaussian oracle rel %.1e",
                r.K, r.price, gauss));
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "put-on-min refinement study, CaseI at (90, 90)", criterion1},
        {2, "put-on-average refinement study, CaseI at (100, 100)", criterion2},
        {3, "domain-size sensitivity, CaseI put-on-min level 0", criterion3},
        {4, "level-2 spot checks against published prices", criterion4},
        {5, "kernel nonnegativity, mass and truncation residual", criterion5},
        {6, "FFT convolution against direct summation", criterion6},
        {7, "scheme properties at level 0", criterion7},
        {8, "truncation order selection", criterion8},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.contains(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.title, secs);
        for (const auto& n : out.notes) std::printf("         %s\n", n.c_str());
        std::fflush(stdout);
        failed += !out.pass;
    }
    std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
