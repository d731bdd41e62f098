#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bpv/profile.hpp"
#include "bpv/reference_distribution.hpp"

namespace bpv {

/// Direction rational rules predict: a rise when the market is below
/// equilibrium (only beta >= 0 supported), a fall when above (beta <= 0),
/// both at equilibrium. Returns 0 or 1.
[[nodiscard]] double rational_forecast(double delta, double beta) noexcept;

/// Standardized acceptance degree of a potential present value.
///
/// With similarity gamma = 1 - |beta| and weight w = gamma * |delta|, the
/// acceptance is the convex combination
///
///     (v0(beta) + w * forecast(beta)) / (1 + w)
///
/// so the rational forecast gains importance with the size of the deviation
/// and with the distance from the scope edge.
[[nodiscard]] double acceptance(const ReferenceDistribution& reference, double delta, double beta);

/// Membership of price p in the behavioural present value. Zero outside the
/// scope interval.
[[nodiscard]] double membership(const InvestorProfile& profile, const MarketContext& ctx, double p);

/// Membership evaluated through the explicit price-space closed forms, kept
/// as an independent cross-check of `membership`. Those forms are only
/// sign-consistent for non-negative deviations; throws DomainError when
/// delta < 0.
[[nodiscard]] double membership_printed(const InvestorProfile& profile, const MarketContext& ctx,
                                        double p);

/// Reference knots mapped into price space, plus the scope edges and the
/// anchor. Sorted, duplicates removed.
[[nodiscard]] std::vector<double> membership_breakpoints(const InvestorProfile& profile,
                                                         const MarketContext& ctx);

struct CurvePoint {
    double x;
    double mu;
};

/// Evaluable membership function of a behavioural present value together with
/// its support, kinks and a sample table.
class MembershipCurve {
public:
    /// Samples: an n-point uniform grid over the scope merged with every
    /// breakpoint, strictly increasing. Requires n >= 2.
    [[nodiscard]] static MembershipCurve from_profile(const InvestorProfile& profile,
                                                      const MarketContext& ctx, std::size_t n);

    /// Crisp present value: membership 1 at `value` (to 1e-12 relative, the
    /// round-off of a return-rate inversion) and 0 elsewhere.
    [[nodiscard]] static MembershipCurve crisp(double value);

    [[nodiscard]] double operator()(double p) const { return evaluator_(p); }

    [[nodiscard]] const ScopeInterval& scope() const noexcept { return scope_; }
    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] std::span<const CurvePoint> samples() const noexcept { return samples_; }

private:
    MembershipCurve(ScopeInterval scope, std::function<double(double)> evaluator,
                    std::vector<double> breakpoints, std::vector<CurvePoint> samples);

    ScopeInterval scope_;
    std::function<double(double)> evaluator_;
    std::vector<double> breakpoints_;
    std::vector<CurvePoint> samples_;
};

[[nodiscard]] inline MembershipCurve membership_curve(const InvestorProfile& profile,
                                                      const MarketContext& ctx, std::size_t n) {
    return MembershipCurve::from_profile(profile, ctx, n);
}

}  // namespace bpv
