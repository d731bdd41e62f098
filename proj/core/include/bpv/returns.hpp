#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "bpv/acceptance.hpp"
#include "bpv/profile.hpp"

namespace bpv {

enum class ReturnKind { Simple, Logarithmic };

[[nodiscard]] const char* to_string(ReturnKind kind) noexcept;

/// Simple: vt / v0 - 1. Logarithmic: ln(vt / v0). Throws DomainError unless
/// both values are positive.
[[nodiscard]] double return_rate(ReturnKind kind, double v0, double vt);

/// Present value reproducing rate r from future value vt. Simple requires r > -1.
[[nodiscard]] double invert_present_value(ReturnKind kind, double r, double vt);

/// Membership of return rate r for one future-value scenario: the extension
/// principle applied through the present-value inversion. Both return kinds
/// are strictly decreasing in the present value, so the supremum over
/// preimages is the value at the single preimage.
[[nodiscard]] double hiroto_membership(const MembershipCurve& curve, ReturnKind kind, double vt, double r);

/// Per-scenario random stream: mt19937_64 seeded with splitmix64(seed ^
/// splitmix64(index)). Scenario i draws the same value regardless of how many
/// or in which order other scenarios are evaluated.
[[nodiscard]] std::mt19937_64 scenario_stream(std::uint64_t seed, std::size_t index);

/// Source of future-value scenarios, optionally with a known CDF.
class FutureValueModel {
public:
    using Sampler = std::function<double(std::mt19937_64&)>;
    using Cdf = std::function<double(double)>;

    FutureValueModel(Sampler sampler, std::optional<Cdf> cdf = std::nullopt);

    [[nodiscard]] static FutureValueModel point_mass(double value);

    /// exp(location + scale * Z) with Z standard normal; scale > 0.
    [[nodiscard]] static FutureValueModel lognormal(double location, double scale);

    /// Discrete distribution over (value, weight) pairs; values > 0, weights >= 0
    /// with a positive total.
    [[nodiscard]] static FutureValueModel empirical(std::vector<std::pair<double, double>> atoms);

    [[nodiscard]] double sample(std::mt19937_64& rng) const { return sampler_(rng); }
    [[nodiscard]] const std::optional<Cdf>& cdf() const noexcept { return cdf_; }

private:
    Sampler sampler_;
    std::optional<Cdf> cdf_;
};

struct HirotoScenario {
    double future_value;
    std::vector<double> membership;  // one value per return-grid point

    friend bool operator==(const HirotoScenario&, const HirotoScenario&) = default;
};

/// Probabilistic fuzzy set of return rates: one membership function per
/// sampled future value, all over a shared return grid.
struct HirotoSet {
    std::vector<double> r_grid;
    std::vector<HirotoScenario> scenarios;
    std::uint64_t seed = 0;

    friend bool operator==(const HirotoSet&, const HirotoSet&) = default;
};

/// Draws n_scenarios future values (scenario i from scenario_stream(seed, i))
/// and evaluates the return-rate membership over r_grid for each. Throws
/// DomainError for an empty or non-increasing grid or n_scenarios == 0, and
/// SamplingError naming the scenario when a draw fails or is not positive.
[[nodiscard]] HirotoSet sample_hiroto(const MembershipCurve& curve, const FutureValueModel& model,
                                      ReturnKind kind, std::span<const double> r_grid,
                                      std::size_t n_scenarios, std::uint64_t seed);

[[nodiscard]] HirotoSet sample_hiroto(const InvestorProfile& profile, const MarketContext& ctx,
                                      const FutureValueModel& model, ReturnKind kind,
                                      std::span<const double> r_grid, std::size_t n_scenarios,
                                      std::uint64_t seed);

/// Pointwise mean of the scenario memberships.
[[nodiscard]] std::vector<double> expected_membership(const HirotoSet& set);

/// CDF of the future value implied by a return-rate CDF at the current market
/// price: F_V(x) = F_r(rate(market_price, x)). The returned function throws
/// DomainError for x <= 0.
[[nodiscard]] std::function<double(double)> future_value_cdf(std::function<double(double)> return_cdf,
                                                             double market_price, ReturnKind kind);

}  // namespace bpv
