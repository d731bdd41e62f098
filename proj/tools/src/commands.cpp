#include "bpv/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bpv/bpv.hpp"

namespace bpv::cli {

namespace {

using json = nlohmann::json;

std::string num(double v) { return format_number(v); }

std::string num(std::size_t v) { return std::to_string(v); }

json bounds_json(const RegimeBounds& b) {
    // JSON has no infinity; unbounded sides become null.
    json out = json::array();
    out.push_back(std::isfinite(b.lower) ? json(b.lower) : json(nullptr));
    out.push_back(std::isfinite(b.upper) ? json(b.upper) : json(nullptr));
    return out;
}

std::vector<const InvestorConfig*> select(const RunConfig& config, const std::optional<std::string>& name) {
    std::vector<const InvestorConfig*> out;
    if (name) {
        out.push_back(&config.investor(*name));
    } else {
        for (const auto& inv : config.investors) out.push_back(&inv);
    }
    return out;
}

}  // namespace

CommandResult membership_command(const RunConfig& config, const std::string& investor, double delta,
                                 std::size_t points) {
    const auto& inv = config.investor(investor);
    const auto ctx = MarketContext::at_deviation(config.c0, delta);
    const auto curve = membership_curve(inv.profile, ctx, points);

    CommandResult result;
    result.table.header = {"p", "mu"};
    for (const auto& pt : curve.samples()) {
        result.table.rows.push_back({num(pt.x), num(pt.mu)});
    }
    const auto& s = curve.scope();
    result.annotations = {{"investor", investor},
                          {"delta", delta},
                          {"regime", to_string(classify_regime(inv.profile, config.c0, delta))},
                          {"scope", {{"lo", s.lo}, {"anchor", s.anchor}, {"hi", s.hi}}}};
    return result;
}

CommandResult avg_ppv_command(const RunConfig& config, const std::optional<std::string>& investor,
                              const GridSpec& sweep) {
    CommandResult result;
    result.table.header = {"investor", "delta", "price", "regime", "avg_ppv", "gap"};
    const auto quad = config.quadrature();
    json bounds = json::object();
    for (const auto* inv : select(config, investor)) {
        const RegimeBounds b = regime_bounds(inv->profile, config.c0);
        std::vector<double> extra;
        if (std::isfinite(b.lower)) extra.push_back(b.lower);
        if (std::isfinite(b.upper)) extra.push_back(b.upper);
        bounds[inv->name] = bounds_json(b);
        for (double delta : make_grid(sweep, extra)) {
            const auto ctx = MarketContext::at_deviation(config.c0, delta);
            result.table.rows.push_back({inv->name, num(delta), num(ctx.market_price()),
                                         to_string(classify_regime(inv->profile, config.c0, delta)),
                                         num(average_ppv(inv->profile, ctx, quad)),
                                         num(stance_gap(inv->profile, ctx, quad))});
        }
    }
    result.annotations = {{"sweep", {{"start", sweep.start}, {"stop", sweep.stop}, {"step", sweep.step}}},
                          {"regime_bounds", bounds}};
    return result;
}

CommandResult threshold_command(const RunConfig& config, const std::optional<std::string>& investor) {
    CommandResult result;
    result.table.header = {"investor", "index", "delta", "price", "gap", "bracket_lo", "bracket_hi"};
    json per_investor = json::object();
    for (const auto* inv : select(config, investor)) {
        const auto thresholds =
            find_stance_thresholds(inv->profile, config.c0, config.root(), config.quadrature(), config.scan());
        if (thresholds.empty()) {
            throw NoSignChangeError("investor " + inv->name +
                                    ": stance gap keeps one sign over the scanned deviation range");
        }
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            const auto& t = thresholds[i];
            result.table.rows.push_back({inv->name, num(i), num(t.delta), num(config.c0 + t.delta),
                                         num(t.gap), num(t.bracket.lo), num(t.bracket.hi)});
        }
        const Bracket range = threshold_scan_range(inv->profile, config.c0, config.scan());
        json entry = {{"regime_bounds", bounds_json(regime_bounds(inv->profile, config.c0))},
                      {"scan_range", {range.lo, range.hi}},
                      {"threshold_count", thresholds.size()}};
        if (inv->reported_threshold) {
            entry["reported_threshold"] = *inv->reported_threshold;
            entry["reported_threshold_note"] =
                "externally reported value, not reproduced by the normative acceptance model "
                "(signed-deviation errata); computed roots are listed in the data";
        }
        per_investor[inv->name] = entry;
    }
    result.annotations = {{"investors", per_investor}, {"scan_step", config.scan_step}};
    return result;
}

CommandResult stance_command(const RunConfig& config, double price) {
    const MarketContext ctx(config.c0, price);
    std::vector<Investor> investors;
    investors.reserve(config.investors.size());
    for (const auto& inv : config.investors) {
        investors.push_back({inv.name, inv.profile});
    }
    const BalanceReport report =
        market_report(investors, ctx, config.tolerances.neutral_eps, config.quadrature());

    CommandResult result;
    result.table.header = {"investor", "stance", "gap", "error"};
    for (const auto& entry : report.investors) {
        if (entry.stance) {
            result.table.rows.push_back({entry.name, to_string(entry.stance->kind), num(entry.stance->gap), ""});
        } else {
            result.table.rows.push_back({entry.name, "failed", "", entry.error});
        }
    }
    result.annotations = {{"price", price},
                          {"delta", ctx.deviation()},
                          {"buyers", report.buyer_count},
                          {"sellers", report.seller_count},
                          {"neutral", report.neutral_count},
                          {"failed", report.failed_count},
                          {"coexistence", report.coexistence}};
    return result;
}

CommandResult coexist_command(const RunConfig& config, const std::string& buyer, const std::string& seller) {
    CoexistenceOptions options;
    options.eps = config.tolerances.neutral_eps;
    options.quad = config.quadrature();
    options.root = config.root();
    options.scan = config.scan();
    const auto bands =
        coexistence_interval(config.investor(buyer).profile, config.investor(seller).profile, config.c0, options);

    CommandResult result;
    result.table.header = {"band", "lo_price", "hi_price", "lo_delta", "hi_delta"};
    for (std::size_t i = 0; i < bands.size(); ++i) {
        result.table.rows.push_back({num(i), num(bands[i].lo), num(bands[i].hi), num(bands[i].lo - config.c0),
                                     num(bands[i].hi - config.c0)});
    }
    result.annotations = {{"buyer", buyer}, {"seller", seller}, {"band_count", bands.size()}};
    return result;
}

CommandResult returns_command(const RunConfig& config, const std::string& investor, double delta,
                              const ReturnsConfig& returns, bool with_scenarios) {
    const auto& inv = config.investor(investor);
    const auto ctx = MarketContext::at_deviation(config.c0, delta);
    const auto grid = make_grid(returns.r_grid);
    const HirotoSet set = sample_hiroto(inv.profile, ctx, make_future_value_model(returns.future_value),
                                        returns.kind, grid, returns.scenarios, config.rng_seed);
    const auto expected = expected_membership(set);

    CommandResult result;
    result.table.header = {"r", "expected_rho"};
    if (with_scenarios) {
        for (std::size_t s = 0; s < set.scenarios.size(); ++s) {
            result.table.header.push_back("s" + std::to_string(s));
        }
    }
    for (std::size_t j = 0; j < grid.size(); ++j) {
        std::vector<std::string> row{num(grid[j]), num(expected[j])};
        if (with_scenarios) {
            for (const auto& scenario : set.scenarios) row.push_back(num(scenario.membership[j]));
        }
        result.table.rows.push_back(std::move(row));
    }
    json future_values = json::array();
    for (const auto& scenario : set.scenarios) future_values.push_back(scenario.future_value);
    result.annotations = {{"investor", investor},
                          {"delta", delta},
                          {"kind", to_string(returns.kind)},
                          {"scenarios", set.scenarios.size()},
                          {"future_values", future_values}};
    return result;
}

std::string config_hash(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string meta_path;

    std::string investor;
    std::string buyer;
    std::string seller;
    double delta = 0.0;
    double price = 0.0;
    std::size_t points = 101;
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<double> step;
    std::optional<double> scan_step;
    std::optional<std::string> kind;
    std::optional<std::size_t> scenarios;
    std::optional<std::uint64_t> seed;
    bool with_scenarios = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError({"cannot open config file " + path});
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

json tolerances_json(const RunConfig& config) {
    return {{"quad_rel", config.tolerances.quad_rel},
            {"quad_abs", config.tolerances.quad_abs},
            {"root_x", config.tolerances.root_x},
            {"neutral_eps", config.tolerances.neutral_eps},
            {"scan_step", config.scan_step}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Behavioural present value toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("-c,--config", opt.config_path, "JSON run configuration")->required();
    app.add_option("-o,--out", opt.out_path, "Write CSV here instead of standard output");
    app.add_option("--meta", opt.meta_path,
                   "Metadata JSON path (default: <out>.meta.json, or standard error without --out)");

    auto* membership = app.add_subcommand("membership", "Membership curve of one investor");
    membership->add_option("--investor", opt.investor)->required();
    membership->add_option("--delta", opt.delta, "Market price deviation from c0")->required();
    membership->add_option("--points", opt.points, "Uniform grid size before breakpoints are merged")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));

    auto* avg = app.add_subcommand("avg-ppv", "Average PPV over a deviation sweep");
    avg->add_option("--investor", opt.investor, "Default: every investor");
    avg->add_option("--start", opt.start);
    avg->add_option("--stop", opt.stop);
    avg->add_option("--step", opt.step);

    auto* threshold = app.add_subcommand("threshold", "Stance thresholds per investor");
    threshold->add_option("--investor", opt.investor, "Default: every investor");
    threshold->add_option("--scan-step", opt.scan_step);

    auto* stance_cmd = app.add_subcommand("stance", "Stance report at a market price");
    stance_cmd->add_option("--price", opt.price)->required();

    auto* coexist = app.add_subcommand("coexist", "Band where one investor buys and another sells");
    coexist->add_option("--buyer", opt.buyer)->required();
    coexist->add_option("--seller", opt.seller)->required();
    coexist->add_option("--scan-step", opt.scan_step);

    auto* returns = app.add_subcommand("returns", "Hiroto sampling of return-rate memberships");
    returns->add_option("--investor", opt.investor)->required();
    auto* delta_opt = returns->add_option("--delta", opt.delta);
    auto* price_opt = returns->add_option("--price", opt.price);
    delta_opt->excludes(price_opt);
    returns->add_option("--kind", opt.kind)->check(CLI::IsMember({"simple", "logarithmic"}));
    returns->add_option("--scenarios", opt.scenarios)->check(CLI::PositiveNumber);
    returns->add_option("--seed", opt.seed);
    returns->add_flag("--with-scenarios", opt.with_scenarios, "One column per scenario");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        const std::string config_text = read_file(opt.config_path);
        RunConfig config = parse_config(config_text);
        if (opt.scan_step) {
            if (!(*opt.scan_step > 0.0)) throw ConfigError({"--scan-step must be positive"});
            config.scan_step = *opt.scan_step;
        }
        if (opt.seed) config.rng_seed = *opt.seed;

        std::string command;
        CommandResult result;
        if (membership->parsed()) {
            command = "membership";
            result = membership_command(config, opt.investor, opt.delta, opt.points);
        } else if (avg->parsed()) {
            command = "avg-ppv";
            GridSpec sweep{};
            if (config.sweep) sweep = *config.sweep;
            if (!config.sweep && !(opt.start && opt.stop && opt.step)) {
                throw ConfigError({"avg-ppv needs --start/--stop/--step or a \"sweep\" section"});
            }
            if (opt.start) sweep.start = *opt.start;
            if (opt.stop) sweep.stop = *opt.stop;
            if (opt.step) sweep.step = *opt.step;
            result = avg_ppv_command(config, opt.investor.empty() ? std::nullopt
                                                                  : std::optional<std::string>(opt.investor),
                                     sweep);
        } else if (threshold->parsed()) {
            command = "threshold";
            result = threshold_command(
                config, opt.investor.empty() ? std::nullopt : std::optional<std::string>(opt.investor));
        } else if (stance_cmd->parsed()) {
            command = "stance";
            result = stance_command(config, opt.price);
        } else if (coexist->parsed()) {
            command = "coexist";
            result = coexist_command(config, opt.buyer, opt.seller);
        } else {
            command = "returns";
            if (!config.returns) {
                throw ConfigError({"returns needs a \"returns\" section in the configuration"});
            }
            ReturnsConfig rc = *config.returns;
            if (opt.kind) rc.kind = *opt.kind == "simple" ? ReturnKind::Simple : ReturnKind::Logarithmic;
            if (opt.scenarios) rc.scenarios = *opt.scenarios;
            const double delta = price_opt->count() > 0 ? opt.price - config.c0 : opt.delta;
            result = returns_command(config, opt.investor, delta, rc, opt.with_scenarios);
        }

        json meta = {{"tool", "bpv"},
                     {"version", "0.1.0"},
                     {"command", command},
                     {"argv", args},
                     {"config", {{"path", opt.config_path}, {"hash", config_hash(config_text)}}},
                     {"c0", config.c0},
                     {"tolerances", tolerances_json(config)},
                     {"seed", config.rng_seed},
                     {"output", opt.out_path.empty() ? "stdout" : opt.out_path},
                     {"annotations", result.annotations}};

        if (opt.out_path.empty()) {
            write_csv(out, result.table);
        } else {
            std::ofstream file(opt.out_path, std::ios::binary);
            if (!file) throw ConfigError({"cannot write " + opt.out_path});
            write_csv(file, result.table);
        }
        std::string meta_path = opt.meta_path;
        if (meta_path.empty() && !opt.out_path.empty()) meta_path = opt.out_path + ".meta.json";
        if (meta_path.empty()) {
            err << "metadata: " << meta.dump() << '\n';
        } else {
            std::ofstream file(meta_path, std::ios::binary);
            if (!file) throw ConfigError({"cannot write " + meta_path});
            file << meta.dump(2) << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const RangeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace bpv::cli
