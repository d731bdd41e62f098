#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bpv/numerics.hpp"
#include "bpv/profile.hpp"
#include "bpv/returns.hpp"

namespace bpv::cli {

/// Syntax or validation failure. `errors()` lists every problem found, each
/// prefixed with a JSON path such as `$.investors[1].alpha`.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);

    [[nodiscard]] const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

struct InvestorConfig {
    std::string name;
    InvestorProfile profile;
    std::optional<double> reported_threshold;  // echoed into metadata, never used numerically
};

struct Tolerances {
    double quad_rel = 1e-10;
    double quad_abs = 1e-12;
    double root_x = 1e-8;
    double neutral_eps = 1e-9;
};

/// Closed arithmetic grid start, start + step, ..., stop.
struct GridSpec {
    double start;
    double stop;
    double step;
};

struct FutureValueConfig {
    enum class Model { Point, Lognormal, Empirical };
    Model model = Model::Point;
    double value = 0.0;
    double location = 0.0;
    double scale = 0.0;
    std::vector<std::pair<double, double>> atoms;
};

struct ReturnsConfig {
    ReturnKind kind = ReturnKind::Simple;
    FutureValueConfig future_value;
    GridSpec r_grid{};
    std::size_t scenarios = 100;
};

struct RunConfig {
    double c0 = 0.0;
    std::vector<InvestorConfig> investors;
    Tolerances tolerances;
    std::uint64_t rng_seed = 0;
    double scan_step = 0.05;
    std::optional<GridSpec> sweep;
    std::optional<ReturnsConfig> returns;

    /// Throws ConfigError when no investor has this name.
    [[nodiscard]] const InvestorConfig& investor(std::string_view name) const;

    [[nodiscard]] QuadratureSpec quadrature() const;
    [[nodiscard]] RootSpec root() const;
    [[nodiscard]] ThresholdScan scan() const;
};

/// Strict JSON parse: duplicate and unknown keys are rejected, every profile
/// invariant is validated against c0.
[[nodiscard]] RunConfig parse_config(std::string_view text);

[[nodiscard]] RunConfig load_config(const std::string& path);

/// Grid points from spec, with `extra` points inside [start, stop] merged in.
/// Throws DomainError on a non-positive step, stop < start or more than 10^7 points.
[[nodiscard]] std::vector<double> make_grid(const GridSpec& spec, const std::vector<double>& extra = {});

[[nodiscard]] FutureValueModel make_future_value_model(const FutureValueConfig& config);

}  // namespace bpv::cli
