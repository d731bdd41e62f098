#include "bpv/acceptance.hpp"

#include <algorithm>
#include <cmath>

#include "bpv/errors.hpp"

namespace bpv {

double rational_forecast(double delta, double beta) noexcept {
    if (delta < 0.0) {
        return beta >= 0.0 ? 1.0 : 0.0;
    }
    if (delta > 0.0) {
        return beta <= 0.0 ? 1.0 : 0.0;
    }
    return 1.0;
}

double acceptance(const ReferenceDistribution& reference, double delta, double beta) {
    const double similarity = 1.0 - std::abs(beta);
    const double weight = similarity * std::abs(delta);
    return (reference(beta) + weight * rational_forecast(delta, beta)) / (1.0 + weight);
}

double membership(const InvestorProfile& profile, const MarketContext& ctx, double p) {
    const ScopeInterval s = scope(profile, ctx);
    if (!s.contains(p)) {
        return 0.0;
    }
    return acceptance(profile.reference(), ctx.deviation(), standardize(s, p));
}

double membership_printed(const InvestorProfile& profile, const MarketContext& ctx, double p) {
    const double delta = ctx.deviation();
    if (delta < 0.0) {
        throw DomainError("closed-form membership is only sign-consistent for non-negative deviations");
    }
    const ScopeInterval s = scope(profile, ctx);
    if (!s.contains(p)) {
        return 0.0;
    }
    const double c0 = ctx.c0();
    const double alpha = profile.alpha();
    const double anchor = c0 + delta;
    const auto& v0 = profile.reference();
    auto clamp_beta = [](double b) { return std::clamp(b, -1.0, 1.0); };

    if (p <= ctx.market_price()) {
        // Lower branch, boosted by the forecast of a fall. Written in the
        // multiplied-out form so the foot (v0 = 0) does not divide by zero.
        const double width = c0 - profile.c_min() + (1.0 - alpha) * delta;
        const double offset = p - profile.c_min() - alpha * delta;
        const double v = v0(clamp_beta((p - anchor) / width));
        return width / (width + offset * delta) * (v + offset / width * delta);
    }
    const double width = profile.c_max() - c0 + (alpha - 1.0) * delta;
    const double offset = profile.c_max() + alpha * delta - p;
    const double v = v0(clamp_beta((p - anchor) / width));
    return width / (width + offset * delta) * v;
}

std::vector<double> membership_breakpoints(const InvestorProfile& profile, const MarketContext& ctx) {
    const ScopeInterval s = scope(profile, ctx);
    std::vector<double> out{s.lo, s.anchor, s.hi};
    for (double beta : profile.reference().interior_betas()) {
        if (beta < 0.0 && !s.lower_degenerate()) {
            out.push_back(destandardize(s, beta));
        } else if (beta > 0.0 && !s.upper_degenerate()) {
            out.push_back(destandardize(s, beta));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MembershipCurve::MembershipCurve(ScopeInterval scope, std::function<double(double)> evaluator,
                                 std::vector<double> breakpoints, std::vector<CurvePoint> samples)
    : scope_(scope),
      evaluator_(std::move(evaluator)),
      breakpoints_(std::move(breakpoints)),
      samples_(std::move(samples)) {}

MembershipCurve MembershipCurve::from_profile(const InvestorProfile& profile, const MarketContext& ctx,
                                              std::size_t n) {
    if (n < 2) {
        throw DomainError("a membership curve needs at least two sample points");
    }
    validate_pairing(profile, ctx.c0());
    const ScopeInterval s = bpv::scope(profile, ctx);
    std::vector<double> breakpoints = membership_breakpoints(profile, ctx);

    const double snap = 1e-12 * s.width();
    std::vector<double> xs = breakpoints;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double x = s.lo + s.width() * static_cast<double>(i) / static_cast<double>(n - 1);
        auto near = std::lower_bound(breakpoints.begin(), breakpoints.end(), x - snap);
        if (near != breakpoints.end() && *near <= x + snap) {
            continue;
        }
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    auto evaluator = [profile, ctx](double p) { return membership(profile, ctx, p); };
    std::vector<CurvePoint> samples;
    samples.reserve(xs.size());
    for (double x : xs) {
        samples.push_back({x, evaluator(x)});
    }
    return MembershipCurve(s, std::move(evaluator), std::move(breakpoints), std::move(samples));
}

MembershipCurve MembershipCurve::crisp(double value) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw DomainError("crisp present value must be positive and finite");
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(value));
    auto evaluator = [value, tol](double p) { return std::abs(p - value) <= tol ? 1.0 : 0.0; };
    return MembershipCurve({value, value, value}, std::move(evaluator), {value}, {{value, 1.0}});
}

}  // namespace bpv
