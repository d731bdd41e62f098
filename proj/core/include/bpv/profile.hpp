#pragma once

#include <utility>

#include "bpv/reference_distribution.hpp"

namespace bpv {

/// Equilibrium price c0 and observed market price. The deviation is cached as
/// market_price - c0.
class MarketContext {
public:
    /// Throws DomainError unless both prices are positive and finite.
    MarketContext(double c0, double market_price);

    [[nodiscard]] static MarketContext at_deviation(double c0, double delta) {
        return MarketContext(c0, c0 + delta);
    }

    [[nodiscard]] double c0() const noexcept { return c0_; }
    [[nodiscard]] double market_price() const noexcept { return market_price_; }
    [[nodiscard]] double deviation() const noexcept { return deviation_; }

private:
    double c0_;
    double market_price_;
    double deviation_;
};

[[nodiscard]] inline double deviation(const MarketContext& ctx) noexcept { return ctx.deviation(); }

/// Behavioural characteristics of one investor: the scope of potential present
/// values assumed at equilibrium, the susceptibility to price deviations and
/// the reference acceptance distribution.
class InvestorProfile {
public:
    /// Validates c_min < c_max and 0 <= alpha <= 1. The ordering against c0 is
    /// checked when the profile is paired with a market (see validate_pairing).
    InvestorProfile(double c_min, double c_max, double alpha,
                    ReferenceDistribution reference = ReferenceDistribution::triangular());

    [[nodiscard]] double c_min() const noexcept { return c_min_; }
    [[nodiscard]] double c_max() const noexcept { return c_max_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const ReferenceDistribution& reference() const noexcept { return reference_; }

private:
    double c_min_;
    double c_max_;
    double alpha_;
    ReferenceDistribution reference_;
};

/// Throws DomainError unless c_min < c0 < c_max.
void validate_pairing(const InvestorProfile& profile, double c0);

enum class Regime {
    BelowRange,   // deviation at or below the lower bound: only upside considered
    Behavioural,  // strictly between the bounds
    AboveRange,   // deviation at or above the upper bound: only downside considered
};

[[nodiscard]] const char* to_string(Regime regime) noexcept;

struct RegimeBounds {
    double lower;
    double upper;
};

/// ((c_min - c0) / (1 - alpha), (c_max - c0) / (1 - alpha)); infinite for alpha = 1.
[[nodiscard]] RegimeBounds regime_bounds(const InvestorProfile& profile, double c0);

/// BelowRange iff c0 + delta <= c_min + alpha * delta, AboveRange iff
/// c0 + delta >= c_max + alpha * delta. Mathematically the same as comparing
/// delta with regime_bounds, but free of the rounding in the division.
[[nodiscard]] Regime classify_regime(const InvestorProfile& profile, double c0, double delta);

/// Admissible potential present values at a given deviation. `anchor` is the
/// market price; one side collapses onto it outside the behavioural regime.
struct ScopeInterval {
    double lo;
    double anchor;
    double hi;

    [[nodiscard]] bool lower_degenerate() const noexcept { return anchor == lo; }
    [[nodiscard]] bool upper_degenerate() const noexcept { return anchor == hi; }
    [[nodiscard]] bool contains(double p) const noexcept { return p >= lo && p <= hi; }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

[[nodiscard]] ScopeInterval scope(const InvestorProfile& profile, double c0, double delta);
[[nodiscard]] ScopeInterval scope(const InvestorProfile& profile, const MarketContext& ctx);

/// Signed relative position of p between the anchor (0) and the scope edge
/// (-1 or 1). Throws RangeError when p lies outside the scope.
[[nodiscard]] double standardize(const ScopeInterval& scope, double p);

/// Inverse of standardize. Throws RangeError when |beta| > 1.
[[nodiscard]] double destandardize(const ScopeInterval& scope, double beta);

}  // namespace bpv
