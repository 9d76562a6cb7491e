#include "bimerton_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bimerton/reference_data.hpp"

namespace bimerton::cli {

namespace {

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
    static const std::map<std::string, std::set<std::string>, std::less<>> keys{
        {"model",
         {"case", "sigma_x", "sigma_y", "rho", "r", "lambda", "mu_jx", "mu_jy", "sigma_jx",
          "sigma_jy", "rho_j", "T"}},
        {"option", {"payoff", "strike", "X0", "Y0", "style"}},
        {"grid", {"level", "N", "J", "M", "half_width", "half_width_x", "half_width_y"}},
        {"run",
         {"epsilon", "embed", "planner", "min_level", "max_level", "domain_scale", "table_spots",
          "allow_slow_levels", "hold_timesteps"}},
        {"output",
         {"dir", "report", "format", "timings", "surface_csv", "kernel_csv", "mask_csv",
          "mask_pgm"}},
    };
    return keys;
}

const char* const kModelKeys[] = {"sigma_x", "sigma_y", "rho",      "r",        "lambda", "mu_jx",
                                  "mu_jy",   "sigma_jx", "sigma_jy", "rho_j", "T"};

struct Entry {
    std::string value;
    int line = 0;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

Sections lex(std::string_view text) {
    Sections out;
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed section header '" + line + "'");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known_keys().contains(section)) fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value, got '" + line + "'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (section.empty()) fail(line_no, "key '" + key + "' appears before any [section]");
        if (!known_keys().at(section).contains(key))
            fail(line_no, "unknown key '" + key + "' in [" + section + "]");
        if (value.empty()) fail(line_no, "[" + section + "] " + key + " has an empty value");
        auto [it, inserted] = out[section].try_emplace(key, Entry{value, line_no});
        if (!inserted)
            fail(line_no, "duplicate key '" + key + "' in [" + section + "] (first on line " +
                              std::to_string(it->second.line) + ")");
    }
    return out;
}

class Reader {
public:
    explicit Reader(Sections s) : s_(std::move(s)) {}

    const Entry* find(std::string_view section, std::string_view key) const {
        auto sit = s_.find(std::string(section));
        if (sit == s_.end()) return nullptr;
        auto kit = sit->second.find(std::string(key));
        return kit == sit->second.end() ? nullptr : &kit->second;
    }
    bool has(std::string_view section, std::string_view key) const { return find(section, key); }

    std::optional<double> number(std::string_view section, std::string_view key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        return to_double(*e, section, key);
    }

    std::optional<int> integer(std::string_view section, std::string_view key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        errno = 0;
        char* end = nullptr;
        const long v = std::strtol(e->value.c_str(), &end, 10);
        if (errno != 0 || end == e->value.c_str() || *end != '\0' || v < -1000000000L ||
            v > 1000000000L)
            fail(e->line, label(section, key) + " must be an integer, got '" + e->value + "'");
        return static_cast<int>(v);
    }

    std::optional<bool> boolean(std::string_view section, std::string_view key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        std::string v = e->value;
        for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        fail(e->line, label(section, key) + " must be true or false, got '" + e->value + "'");
    }

    std::optional<std::string> text(std::string_view section, std::string_view key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        return e->value;
    }

    std::vector<double> list(std::string_view section, std::string_view key) const {
        const Entry* e = find(section, key);
        if (!e) return {};
        std::vector<double> out;
        std::stringstream ss(e->value);
        for (std::string item; std::getline(ss, item, ',');)
            out.push_back(to_double(Entry{trim(item), e->line}, section, key));
        return out;
    }

    /// Runs f and rewrites std::invalid_argument as a ConfigError on key's line.
    template <typename F>
    auto with_line(std::string_view section, std::string_view key, F&& f) const {
        try {
            return f();
        } catch (const std::invalid_argument& ex) {
            const Entry* e = find(section, key);
            fail(e ? e->line : 0, label(section, key) + ": " + ex.what());
        }
    }

    static std::string label(std::string_view section, std::string_view key) {
        return "[" + std::string(section) + "] " + std::string(key);
    }

private:
    static double to_double(const Entry& e, std::string_view section, std::string_view key) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(e.value.c_str(), &end);
        if (errno != 0 || end == e.value.c_str() || *end != '\0' || !std::isfinite(v))
            fail(e.line, label(section, key) + " must be a finite number, got '" + e.value + "'");
        return v;
    }

    Sections s_;
};

void read_model(const Reader& rd, RunConfig& cfg) {
    if (auto name = rd.text("model", "case")) {
        cfg.case_id = rd.with_line("model", "case", [&] { return parse_case_id(*name); });
        for (const char* key : kModelKeys)
            if (const Entry* e = rd.find("model", key))
                fail(e->line, std::string("[model] ") + key +
                                  " cannot be combined with case (give one or the other)");
        cfg.params = bimerton::case_spec(*cfg.case_id).params;
        return;
    }
    std::string missing;
    for (const char* key : kModelKeys)
        if (!rd.has("model", key)) missing += std::string(missing.empty() ? "" : ", ") + key;
    if (!missing.empty())
        fail(0, "[model] needs either case or every parameter; missing: " + missing);
    ModelParams& p = cfg.params;
    p.sigma_x = *rd.number("model", "sigma_x");
    p.sigma_y = *rd.number("model", "sigma_y");
    p.rho = *rd.number("model", "rho");
    p.r = *rd.number("model", "r");
    p.lambda = *rd.number("model", "lambda");
    p.mu_jx = *rd.number("model", "mu_jx");
    p.mu_jy = *rd.number("model", "mu_jy");
    p.sigma_jx = *rd.number("model", "sigma_jx");
    p.sigma_jy = *rd.number("model", "sigma_jy");
    p.rho_j = *rd.number("model", "rho_j");
    p.T = *rd.number("model", "T");
    try {
        validate(p);
    } catch (const std::invalid_argument& ex) {
        fail(0, std::string("[model] ") + ex.what());
    }
}

void read_option(const Reader& rd, RunConfig& cfg) {
    const auto payoff = rd.text("option", "payoff");
    if (!payoff) fail(0, "[option] payoff is required (put_on_min or put_on_average)");
    cfg.payoff = rd.with_line("option", "payoff", [&] { return parse_payoff_kind(*payoff); });

    if (auto k = rd.number("option", "strike")) {
        cfg.strike = *k;
    } else if (cfg.case_id) {
        cfg.strike = bimerton::case_spec(*cfg.case_id).strike;
    } else {
        fail(0, "[option] strike is required when [model] is explicit");
    }
    rd.with_line("option", "strike", [&] { validate(Payoff{cfg.payoff, cfg.strike}); });

    const auto x0 = rd.number("option", "X0");
    const auto y0 = rd.number("option", "Y0");
    if (x0.has_value() != y0.has_value()) fail(0, "[option] X0 and Y0 must be given together");
    if (x0) {
        cfg.spot = {*x0, *y0};
        if (!(cfg.spot.x > 0.0) || !(cfg.spot.y > 0.0))
            fail(rd.find("option", "X0")->line, "[option] X0 and Y0 must be > 0");
    } else {
        auto published = cfg.case_id ? reference::convergence_table(*cfg.case_id, cfg.payoff)
                                     : std::nullopt;
        cfg.spot = published ? published->spot : Vec2{cfg.strike, cfg.strike};
    }

    if (auto s = rd.text("option", "style"))
        cfg.style = rd.with_line("option", "style", [&] { return parse_exercise_style(*s); });
}

void read_grid(const Reader& rd, RunConfig& cfg) {
    const bool explicit_grid = rd.has("grid", "N") || rd.has("grid", "J") || rd.has("grid", "M");
    if (auto level = rd.integer("grid", "level")) {
        if (explicit_grid)
            fail(rd.find("grid", "level")->line,
                 "[grid] level cannot be combined with explicit N, J or M");
        cfg.level = *level;
        const auto lv = rd.with_line("grid", "level", [&] { return refinement_level(*level); });
        cfg.N = lv.N;
        cfg.J = lv.J;
        cfg.M = lv.M;
    } else if (explicit_grid) {
        if (!rd.has("grid", "N") || !rd.has("grid", "J") || !rd.has("grid", "M"))
            fail(0, "[grid] explicit grids need all of N, J and M");
        cfg.N = *rd.integer("grid", "N");
        cfg.J = *rd.integer("grid", "J");
        cfg.M = *rd.integer("grid", "M");
    } else {
        const auto lv = refinement_level(0);
        cfg.N = lv.N;
        cfg.J = lv.J;
        cfg.M = lv.M;
    }

    const auto both = rd.number("grid", "half_width");
    const auto hx = rd.number("grid", "half_width_x");
    const auto hy = rd.number("grid", "half_width_y");
    if (both && (hx || hy))
        fail(rd.find("grid", "half_width")->line,
             "[grid] half_width cannot be combined with half_width_x / half_width_y");
    const std::optional<double> fallback =
        both ? both
             : (cfg.case_id ? std::optional(bimerton::case_spec(*cfg.case_id).half_width)
                            : std::nullopt);
    const auto x = hx ? hx : fallback;
    const auto y = hy ? hy : fallback;
    if (!x || !y) fail(0, "[grid] half_width is required when [model] is explicit");
    cfg.half_width = {*x, *y};

    try {
        (void)cfg.grid();
    } catch (const std::invalid_argument& ex) {
        fail(0, std::string("[grid] ") + ex.what());
    }
}

void read_run(const Reader& rd, RunConfig& cfg) {
    if (auto eps = rd.number("run", "epsilon")) {
        if (!(*eps > 0.0)) fail(rd.find("run", "epsilon")->line, "[run] epsilon must be > 0");
        cfg.epsilon = eps;
    }
    if (auto e = rd.text("run", "embed"))
        cfg.embed = rd.with_line("run", "embed", [&] { return parse_embed_mode(*e); });
    if (auto p = rd.text("run", "planner")) {
        if (*p == "estimate") cfg.planner = PlannerEffort::Estimate;
        else if (*p == "measure") cfg.planner = PlannerEffort::Measure;
        else fail(rd.find("run", "planner")->line, "[run] planner must be estimate or measure");
    }
    cfg.min_level = rd.integer("run", "min_level").value_or(0);
    cfg.max_level = rd.integer("run", "max_level").value_or(2);
    if (cfg.min_level < 0 || cfg.max_level > kMaxRefinementLevel || cfg.min_level > cfg.max_level)
        fail(0, "[run] levels must satisfy 0 <= min_level <= max_level <= " +
                    std::to_string(kMaxRefinementLevel));
    if (auto s = rd.text("run", "domain_scale"))
        cfg.domain_scale = rd.with_line("run", "domain_scale", [&] { return parse_domain_scale(*s); });
    cfg.table_spots = rd.list("run", "table_spots");
    for (double s : cfg.table_spots)
        if (!(s > 0.0)) fail(rd.find("run", "table_spots")->line, "[run] table_spots must be > 0");
    cfg.allow_slow_levels = rd.boolean("run", "allow_slow_levels").value_or(false);
    cfg.hold_timesteps = rd.boolean("run", "hold_timesteps").value_or(false);
}

void read_output(const Reader& rd, RunConfig& cfg) {
    if (auto d = rd.text("output", "dir")) cfg.output_dir = *d;
    if (auto r = rd.text("output", "report")) cfg.report = *r;
    if (auto f = rd.text("output", "format"))
        cfg.format = rd.with_line("output", "format", [&] { return parse_report_format(*f); });
    cfg.timings = rd.boolean("output", "timings").value_or(false);
    if (auto p = rd.text("output", "surface_csv")) cfg.surface_csv = *p;
    if (auto p = rd.text("output", "kernel_csv")) cfg.kernel_csv = *p;
    if (auto p = rd.text("output", "mask_csv")) cfg.mask_csv = *p;
    if (auto p = rd.text("output", "mask_pgm")) cfg.mask_pgm = *p;
}

}  // namespace

std::filesystem::path RunConfig::resolve(const std::filesystem::path& p) const {
    return p.is_absolute() ? p : output_dir / p;
}

CaseSpec RunConfig::case_spec() const {
    CaseSpec spec = case_id ? bimerton::case_spec(*case_id) : CaseSpec{};
    spec.params = params;
    spec.strike = strike;
    spec.half_width = half_width.x;
    return spec;
}

GridSpec RunConfig::grid() const {
    return build_grid(validate(params), spot, half_width, N, J, M);
}

PricingOptions RunConfig::pricing() const {
    PricingOptions o;
    o.style = style;
    o.epsilon = epsilon;
    o.embed = embed;
    o.planner = planner;
    return o;
}

void RunConfig::set_level(int l) {
    const RefinementLevel lv = refinement_level(l);
    level = l;
    N = lv.N;
    J = lv.J;
    M = lv.M;
}

RunConfig parse_config(std::string_view text) {
    const Reader rd(lex(text));
    RunConfig cfg;
    read_model(rd, cfg);
    read_option(rd, cfg);
    read_grid(rd, cfg);
    read_run(rd, cfg);
    read_output(rd, cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    RunConfig cfg;
    try {
        cfg = parse_config(ss.str());
    } catch (const ConfigError& ex) {
        throw ConfigError(path.string() + ": " + ex.what());
    }
    apply_environment(cfg);
    return cfg;
}

void apply_environment(RunConfig& config) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0')
        config.output_dir = dir;
}

}  // namespace bimerton::cli
