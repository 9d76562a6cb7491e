#include "bimerton_cli/app.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "bimerton/errors.hpp"
#include "bimerton/export.hpp"
#include "bimerton/harness.hpp"
#include "bimerton/kernel.hpp"
#include "bimerton/pricer.hpp"

namespace bimerton::cli {

namespace {

std::string num(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

StudyOptions study_options(const RunConfig& cfg) {
    StudyOptions o;
    o.pricing = cfg.pricing();
    o.min_level = cfg.min_level;
    o.max_level = cfg.max_level;
    o.hold_timesteps = cfg.hold_timesteps;
    o.half_width = cfg.half_width;
    return o;
}

template <typename Report>
void publish(const RunConfig& cfg, const Report& report, std::ostream& out) {
    emit_report(out, report, cfg.format, cfg.timings);
    if (cfg.report)
        write_file(cfg.resolve(*cfg.report),
                   [&](std::ostream& f) { emit_report(f, report, cfg.format, cfg.timings); });
}

void describe(const RunConfig& cfg, const GridSpec& grid, std::ostream& out) {
    out << "model: " << (cfg.case_id ? std::string(to_string(*cfg.case_id)) : "explicit") << '\n'
        << "payoff: " << to_string(cfg.payoff) << " strike " << num("%g", cfg.strike) << '\n'
        << "spot: (" << num("%g", cfg.spot.x) << ", " << num("%g", cfg.spot.y) << ")\n"
        << "grid: N=" << grid.N() << " J=" << grid.J() << " M=" << grid.M
        << " half_width=(" << num("%g", cfg.half_width.x) << ", " << num("%g", cfg.half_width.y)
        << ") embed=" << to_string(cfg.embed) << '\n';
}

void run_price(const RunConfig& cfg, std::ostream& out) {
    const GridSpec grid = cfg.grid();
    const Payoff payoff{cfg.payoff, cfg.strike};
    const PriceResult res = price(cfg.params, payoff, grid, cfg.pricing());
    describe(cfg, grid, out);
    out << "style: " << to_string(res.style) << '\n'
        << "truncation: K=" << res.K << " epsilon=" << num("%.3e", res.epsilon) << '\n'
        << "price: " << num("%.10f", res.price) << '\n';
    if (cfg.timings) out << "seconds: " << num("%.3f", res.timings.total_seconds) << '\n';

    if (cfg.surface_csv)
        write_file(cfg.resolve(*cfg.surface_csv),
                   [&](std::ostream& f) { write_surface_csv(f, res.surface, grid); });
    if (cfg.kernel_csv) {
        const KernelArray kernel = build_kernel(validate(cfg.params), grid, res.epsilon);
        write_file(cfg.resolve(*cfg.kernel_csv),
                   [&](std::ostream& f) { write_kernel_csv(f, kernel); });
    }
    if (cfg.mask_csv || cfg.mask_pgm) {
        if (res.exercise_mask.empty())
            throw ConfigError("exercise masks need style = american");
        if (cfg.mask_csv)
            write_file(cfg.resolve(*cfg.mask_csv),
                       [&](std::ostream& f) { write_mask_csv(f, res.exercise_mask, grid); });
        if (cfg.mask_pgm)
            write_file(cfg.resolve(*cfg.mask_pgm),
                       [&](std::ostream& f) { write_mask_pgm(f, res.exercise_mask); });
    }
}

void run_region(const RunConfig& cfg, std::ostream& out) {
    if (cfg.style != ExerciseStyle::American)
        throw ConfigError("region needs style = american");
    const GridSpec grid = cfg.grid();
    PricingOptions options = cfg.pricing();
    options.stop_step = grid.M / 2;
    const PriceResult res = price(cfg.params, Payoff{cfg.payoff, cfg.strike}, grid, options);

    std::size_t exercised = 0;
    for (auto v : res.exercise_mask.flat()) exercised += v;

    const auto csv = cfg.resolve(cfg.mask_csv.value_or("region_mask.csv"));
    const auto pgm = cfg.resolve(cfg.mask_pgm.value_or("region_mask.pgm"));
    write_file(csv, [&](std::ostream& f) { write_mask_csv(f, res.exercise_mask, grid); });
    write_file(pgm, [&](std::ostream& f) { write_mask_pgm(f, res.exercise_mask); });

    describe(cfg, grid, out);
    out << "tau: " << num("%g", res.steps * grid.dtau) << " (" << res.steps << " of " << grid.M
        << " steps)\n"
        << "exercised nodes: " << exercised << " of " << res.exercise_mask.size() << '\n'
        << "mask csv: " << csv.string() << '\n'
        << "mask pgm: " << pgm.string() << '\n';
}

void run_table(const RunConfig& cfg, std::ostream& out) {
    TableOptions o;
    o.pricing = cfg.pricing();
    o.level = cfg.level.value_or(2);
    o.allow_slow_levels = cfg.allow_slow_levels;
    o.half_width = cfg.half_width;
    const CaseSpec spec = cfg.case_spec();
    SpotGridReport report;
    if (cfg.table_spots.empty()) {
        if (!cfg.case_id) throw ConfigError("[run] table_spots is required when [model] is explicit");
        report = comprehensive_table(spec, cfg.payoff, o);
    } else {
        report = comprehensive_table(spec, cfg.payoff, cfg.table_spots, cfg.table_spots, o);
    }
    publish(cfg, report, out);
}

}  // namespace

Subcommand parse_subcommand(std::string_view name) {
    if (name == "price") return Subcommand::Price;
    if (name == "converge") return Subcommand::Converge;
    if (name == "domain-study") return Subcommand::DomainStudy;
    if (name == "table") return Subcommand::Table;
    if (name == "region") return Subcommand::Region;
    throw std::invalid_argument("unknown subcommand '" + std::string(name) + "'");
}

void execute(Subcommand cmd, const RunConfig& cfg, std::ostream& out) {
    switch (cmd) {
        case Subcommand::Price:
            run_price(cfg, out);
            return;
        case Subcommand::Converge:
            publish(cfg, convergence_study(cfg.case_spec(), cfg.payoff, cfg.spot, study_options(cfg)),
                    out);
            return;
        case Subcommand::DomainStudy:
            publish(cfg,
                    domain_study(cfg.case_spec(), cfg.payoff, cfg.spot, cfg.domain_scale,
                                 study_options(cfg)),
                    out);
            return;
        case Subcommand::Table:
            run_table(cfg, out);
            return;
        case Subcommand::Region:
            run_region(cfg, out);
            return;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"American and European two-asset options under bivariate Merton jump-diffusion"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<double> epsilon;
    std::optional<std::string> embed;
    std::optional<int> level;
    std::optional<std::string> mode;
    std::optional<std::string> format;
    bool timings = false;

    app.add_option("-c,--config", config_path, "run configuration file")->required();
    app.add_option("--epsilon", epsilon, "series truncation tolerance");
    app.add_option("--embed", embed, "circulant embedding")
        ->check(CLI::IsMember({"exact", "compact", "padded"}));
    app.add_option("--level", level,
                   "refinement level 0-4 (top level for converge and domain-study)")
        ->check(CLI::Range(0, kMaxRefinementLevel));
    app.add_option("--mode", mode, "exercise style")->check(CLI::IsMember({"american", "european"}));
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "text"}));
    app.add_flag("--timings", timings, "report wall-clock seconds");

    app.add_subcommand("price", "price one option at the configured spot");
    app.add_subcommand("converge", "refinement study over [run] min_level..max_level");
    app.add_subcommand("domain-study", "reprice with the interior box halved or doubled");
    app.add_subcommand("table", "spot-grid table, one anchored grid per spot");
    app.add_subcommand("region", "exercise region at half maturity; writes CSV and PGM masks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const Subcommand cmd = parse_subcommand(app.get_subcommands().front()->get_name());
        RunConfig cfg = load_config(config_path);
        if (epsilon) {
            if (!(*epsilon > 0.0)) throw ConfigError("--epsilon must be > 0");
            cfg.epsilon = epsilon;
        }
        if (embed) cfg.embed = parse_embed_mode(*embed);
        if (mode) cfg.style = parse_exercise_style(*mode);
        if (format) cfg.format = parse_report_format(*format);
        if (timings) cfg.timings = true;
        if (level) {
            if (cmd == Subcommand::Converge || cmd == Subcommand::DomainStudy) {
                cfg.max_level = *level;
                cfg.min_level = std::min(cfg.min_level, *level);
            } else {
                cfg.set_level(*level);
            }
        }
        execute(cmd, cfg, out);
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace bimerton::cli
