#include "bpv/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bpv/errors.hpp"
#include "bpv/reference_distribution.hpp"

namespace bpv::cli {

namespace {

using json = nlohmann::json;

std::string join_errors(const std::vector<std::string>& errors) {
    std::string out = "invalid configuration";
    for (const auto& e : errors) {
        out += "\n  " + e;
    }
    return out;
}

/// Collects path-qualified problems while walking the document.
class Reader {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& message) {
        errors.push_back(path + ": " + message);
    }

    bool expect_object(const json& node, const std::string& path) {
        if (!node.is_object()) {
            fail(path, "expected an object");
            return false;
        }
        return true;
    }

    void reject_unknown(const json& obj, const std::string& path,
                        std::initializer_list<std::string_view> allowed) {
        for (const auto& [key, value] : obj.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(path + "." + key, "unknown key");
            }
        }
    }

    std::optional<double> number(const json& obj, const std::string& path, const char* key,
                                 bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(path + "." + key, "required number is missing");
            return std::nullopt;
        }
        if (!it->is_number()) {
            fail(path + "." + key, "expected a number");
            return std::nullopt;
        }
        const double v = it->get<double>();
        if (!std::isfinite(v)) {
            fail(path + "." + key, "must be finite");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> positive(const json& obj, const std::string& path, const char* key,
                                   bool required) {
        auto v = number(obj, path, key, required);
        if (v && !(*v > 0.0)) {
            fail(path + "." + key, "must be positive");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::string> string(const json& obj, const std::string& path, const char* key,
                                      bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(path + "." + key, "required string is missing");
            return std::nullopt;
        }
        if (!it->is_string()) {
            fail(path + "." + key, "expected a string");
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<std::uint64_t> unsigned_integer(const json& obj, const std::string& path,
                                                  const char* key, bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(path + "." + key, "required integer is missing");
            return std::nullopt;
        }
        if (!it->is_number_unsigned()) {
            fail(path + "." + key, "expected a non-negative integer");
            return std::nullopt;
        }
        return it->get<std::uint64_t>();
    }

    std::optional<GridSpec> grid(const json& node, const std::string& path) {
        if (!expect_object(node, path)) return std::nullopt;
        reject_unknown(node, path, {"start", "stop", "step"});
        const auto start = number(node, path, "start", true);
        const auto stop = number(node, path, "stop", true);
        const auto step = positive(node, path, "step", true);
        if (!start || !stop || !step) return std::nullopt;
        if (*stop < *start) {
            fail(path, "stop must not be below start");
            return std::nullopt;
        }
        if ((*stop - *start) / *step > 1e7) {
            fail(path, "grid would exceed 10^7 points");
            return std::nullopt;
        }
        return GridSpec{*start, *stop, *step};
    }

    std::optional<ReferenceDistribution> reference(const json& obj, const std::string& path) {
        const auto it = obj.find("reference");
        if (it == obj.end() || (it->is_string() && it->get<std::string>() == "triangular")) {
            return ReferenceDistribution::triangular();
        }
        const std::string here = path + ".reference";
        if (!it->is_array()) {
            fail(here, "expected \"triangular\" or a list of [beta, value] knots");
            return std::nullopt;
        }
        std::vector<Knot> knots;
        bool ok = true;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& k = (*it)[i];
            if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
                fail(here + "[" + std::to_string(i) + "]", "expected [beta, value]");
                ok = false;
                continue;
            }
            knots.push_back({k[0].get<double>(), k[1].get<double>()});
        }
        if (!ok) return std::nullopt;
        if (auto violation = validate_reference(knots)) {
            fail(here, std::string(to_string(violation->kind)) + ": " + violation->message);
            return std::nullopt;
        }
        return ReferenceDistribution(std::move(knots));
    }
};

std::optional<FutureValueConfig> read_future_value(Reader& r, const json& node, const std::string& path) {
    if (!r.expect_object(node, path)) return std::nullopt;
    const auto model = r.string(node, path, "model", true);
    if (!model) return std::nullopt;
    FutureValueConfig out;
    if (*model == "point") {
        r.reject_unknown(node, path, {"model", "value"});
        const auto v = r.positive(node, path, "value", true);
        if (!v) return std::nullopt;
        out.model = FutureValueConfig::Model::Point;
        out.value = *v;
        return out;
    }
    if (*model == "lognormal") {
        r.reject_unknown(node, path, {"model", "location", "scale"});
        const auto location = r.number(node, path, "location", true);
        const auto scale = r.positive(node, path, "scale", true);
        if (!location || !scale) return std::nullopt;
        out.model = FutureValueConfig::Model::Lognormal;
        out.location = *location;
        out.scale = *scale;
        return out;
    }
    if (*model == "empirical") {
        r.reject_unknown(node, path, {"model", "atoms"});
        const auto it = node.find("atoms");
        if (it == node.end() || !it->is_array() || it->empty()) {
            r.fail(path + ".atoms", "expected a non-empty list of [value, weight]");
            return std::nullopt;
        }
        double total = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& a = (*it)[i];
            const std::string here = path + ".atoms[" + std::to_string(i) + "]";
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
                r.fail(here, "expected [value, weight]");
                ok = false;
                continue;
            }
            const double v = a[0].get<double>();
            const double w = a[1].get<double>();
            if (!(v > 0.0) || !(w >= 0.0) || !std::isfinite(v) || !std::isfinite(w)) {
                r.fail(here, "value must be positive and weight non-negative");
                ok = false;
                continue;
            }
            total += w;
            out.atoms.emplace_back(v, w);
        }
        if (ok && !(total > 0.0)) {
            r.fail(path + ".atoms", "weights must have a positive total");
            ok = false;
        }
        if (!ok) return std::nullopt;
        out.model = FutureValueConfig::Model::Empirical;
        return out;
    }
    r.fail(path + ".model", "expected \"point\", \"lognormal\" or \"empirical\"");
    return std::nullopt;
}

std::optional<ReturnsConfig> read_returns(Reader& r, const json& node, const std::string& path) {
    if (!r.expect_object(node, path)) return std::nullopt;
    r.reject_unknown(node, path, {"kind", "future_value", "r_grid", "scenarios"});
    ReturnsConfig out;
    bool ok = true;
    if (const auto kind = r.string(node, path, "kind", false)) {
        if (*kind == "simple") {
            out.kind = ReturnKind::Simple;
        } else if (*kind == "logarithmic") {
            out.kind = ReturnKind::Logarithmic;
        } else {
            r.fail(path + ".kind", "expected \"simple\" or \"logarithmic\"");
            ok = false;
        }
    }
    if (const auto n = r.unsigned_integer(node, path, "scenarios", false)) {
        if (*n == 0) {
            r.fail(path + ".scenarios", "must be at least 1");
            ok = false;
        }
        out.scenarios = static_cast<std::size_t>(*n);
    }
    if (node.contains("future_value")) {
        auto fv = read_future_value(r, node.at("future_value"), path + ".future_value");
        ok = ok && fv.has_value();
        if (fv) out.future_value = std::move(*fv);
    } else {
        r.fail(path + ".future_value", "required object is missing");
        ok = false;
    }
    if (node.contains("r_grid")) {
        auto g = r.grid(node.at("r_grid"), path + ".r_grid");
        ok = ok && g.has_value();
        if (g) {
            out.r_grid = *g;
            if (out.kind == ReturnKind::Simple && !(g->start > -1.0)) {
                r.fail(path + ".r_grid.start", "simple return rates must exceed -1");
                ok = false;
            }
        }
    } else {
        r.fail(path + ".r_grid", "required object is missing");
        ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
}

json parse_strict(std::string_view text) {
    std::vector<std::set<std::string>> open_objects;
    std::vector<std::string> duplicates;
    json::parser_callback_t callback = [&](int, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start:
                open_objects.emplace_back();
                break;
            case json::parse_event_t::object_end:
                if (!open_objects.empty()) open_objects.pop_back();
                break;
            case json::parse_event_t::key:
                if (!open_objects.empty() && !open_objects.back().insert(parsed.get<std::string>()).second) {
                    duplicates.push_back("duplicate key \"" + parsed.get<std::string>() + "\"");
                }
                break;
            default:
                break;
        }
        return true;
    };
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), callback, true, false);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("syntax error: ") + e.what()});
    }
    if (!duplicates.empty()) {
        throw ConfigError(duplicates);
    }
    return doc;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

const InvestorConfig& RunConfig::investor(std::string_view name) const {
    for (const auto& inv : investors) {
        if (inv.name == name) return inv;
    }
    throw ConfigError({"unknown investor \"" + std::string(name) + "\""});
}

QuadratureSpec RunConfig::quadrature() const {
    QuadratureSpec spec;
    spec.rel_tol = tolerances.quad_rel;
    spec.abs_tol = tolerances.quad_abs;
    return spec;
}

RootSpec RunConfig::root() const {
    RootSpec spec;
    spec.x_tol = tolerances.root_x;
    return spec;
}

ThresholdScan RunConfig::scan() const {
    ThresholdScan s;
    s.step = scan_step;
    return s;
}

RunConfig parse_config(std::string_view text) {
    const json doc = parse_strict(text);
    Reader r;
    RunConfig out;
    if (!r.expect_object(doc, "$")) {
        throw ConfigError(r.errors);
    }
    r.reject_unknown(doc, "$",
                     {"c0", "investors", "tolerances", "rng_seed", "scan_step", "sweep", "returns"});

    const auto c0 = r.positive(doc, "$", "c0", true);
    if (c0) out.c0 = *c0;

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        if (r.expect_object(t, "$.tolerances")) {
            r.reject_unknown(t, "$.tolerances", {"quad_rel", "quad_abs", "root_x", "neutral_eps"});
            if (auto v = r.positive(t, "$.tolerances", "quad_rel", false)) out.tolerances.quad_rel = *v;
            if (auto v = r.positive(t, "$.tolerances", "quad_abs", false)) out.tolerances.quad_abs = *v;
            if (auto v = r.positive(t, "$.tolerances", "root_x", false)) out.tolerances.root_x = *v;
            if (auto v = r.number(t, "$.tolerances", "neutral_eps", false)) {
                if (*v < 0.0) {
                    r.fail("$.tolerances.neutral_eps", "must be non-negative");
                } else {
                    out.tolerances.neutral_eps = *v;
                }
            }
        }
    }
    if (auto seed = r.unsigned_integer(doc, "$", "rng_seed", false)) out.rng_seed = *seed;
    if (auto step = r.positive(doc, "$", "scan_step", false)) out.scan_step = *step;
    if (doc.contains("sweep")) out.sweep = r.grid(doc.at("sweep"), "$.sweep");
    if (doc.contains("returns")) out.returns = read_returns(r, doc.at("returns"), "$.returns");

    const auto investors = doc.find("investors");
    if (investors == doc.end() || !investors->is_array() || investors->empty()) {
        r.fail("$.investors", "expected a non-empty list of investors");
    } else {
        std::set<std::string> names;
        for (std::size_t i = 0; i < investors->size(); ++i) {
            const std::string path = "$.investors[" + std::to_string(i) + "]";
            const json& node = (*investors)[i];
            if (!r.expect_object(node, path)) continue;
            r.reject_unknown(node, path, {"name", "c_min", "c_max", "alpha", "reference", "reported_threshold"});
            const auto name = r.string(node, path, "name", true);
            const auto c_min = r.number(node, path, "c_min", true);
            const auto c_max = r.number(node, path, "c_max", true);
            const auto alpha = r.number(node, path, "alpha", true);
            const auto reported = r.number(node, path, "reported_threshold", false);
            auto reference = r.reference(node, path);

            bool ok = name && c_min && c_max && alpha && reference;
            if (name) {
                if (name->empty()) {
                    r.fail(path + ".name", "must not be empty");
                    ok = false;
                } else if (!names.insert(*name).second) {
                    r.fail(path + ".name", "duplicate investor name \"" + *name + "\"");
                    ok = false;
                }
            }
            if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) {
                r.fail(path + ".alpha", "must lie in [0, 1]");
                ok = false;
            }
            if (c_min && c_max && c0) {
                if (!(*c_min < *c0)) {
                    r.fail(path + ".c_min", "must be strictly below c0");
                    ok = false;
                }
                if (!(*c0 < *c_max)) {
                    r.fail(path + ".c_max", "must be strictly above c0");
                    ok = false;
                }
            }
            if (ok && c0) {
                out.investors.push_back({*name, InvestorProfile(*c_min, *c_max, *alpha, std::move(*reference)),
                                         reported});
            }
        }
    }
    if (!r.errors.empty()) {
        throw ConfigError(r.errors);
    }
    return out;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError({"cannot open config file " + path});
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::vector<double> make_grid(const GridSpec& spec, const std::vector<double>& extra) {
    if (!(spec.step > 0.0) || !(spec.stop >= spec.start) || !std::isfinite(spec.start) ||
        !std::isfinite(spec.stop)) {
        throw DomainError("grid needs finite start <= stop and a positive step");
    }
    const double span = spec.stop - spec.start;
    const double cells = std::floor(span / spec.step + 1e-9);
    if (cells > 1e7) {
        throw DomainError("grid would exceed 10^7 points");
    }
    const auto n = static_cast<std::size_t>(cells);
    std::vector<double> xs;
    xs.reserve(n + 2 + extra.size());
    for (std::size_t i = 0; i <= n; ++i) {
        xs.push_back(spec.start + spec.step * static_cast<double>(i));
    }
    const double snap = 1e-9 * spec.step;
    if (xs.back() > spec.stop - snap) {
        xs.back() = spec.stop;
    } else {
        xs.push_back(spec.stop);
    }
    for (double x : extra) {
        if (x >= spec.start && x <= spec.stop) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

FutureValueModel make_future_value_model(const FutureValueConfig& config) {
    switch (config.model) {
        case FutureValueConfig::Model::Point: return FutureValueModel::point_mass(config.value);
        case FutureValueConfig::Model::Lognormal:
            return FutureValueModel::lognormal(config.location, config.scale);
        case FutureValueConfig::Model::Empirical: return FutureValueModel::empirical(config.atoms);
    }
    throw DomainError("unknown future value model");
}

}  // namespace bpv::cli
