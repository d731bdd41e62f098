#include "bpv/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bpv/errors.hpp"

namespace bpv {

MarketContext::MarketContext(double c0, double market_price)
    : c0_(c0), market_price_(market_price), deviation_(market_price - c0) {
    if (!(std::isfinite(c0) && c0 > 0.0)) {
        throw DomainError("equilibrium price must be positive and finite");
    }
    if (!(std::isfinite(market_price) && market_price > 0.0)) {
        throw DomainError("market price must be positive and finite");
    }
}

InvestorProfile::InvestorProfile(double c_min, double c_max, double alpha,
                                 ReferenceDistribution reference)
    : c_min_(c_min), c_max_(c_max), alpha_(alpha), reference_(std::move(reference)) {
    if (!std::isfinite(c_min) || !std::isfinite(c_max) || !(c_min < c_max)) {
        throw DomainError("investor bounds must be finite with c_min < c_max");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("susceptibility alpha must lie in [0, 1]");
    }
}

void validate_pairing(const InvestorProfile& profile, double c0) {
    if (!(profile.c_min() < c0 && c0 < profile.c_max())) {
        std::ostringstream os;
        os << "equilibrium price " << c0 << " must lie strictly inside (" << profile.c_min() << ", "
           << profile.c_max() << ")";
        throw DomainError(os.str());
    }
}

const char* to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::BelowRange: return "below-range";
        case Regime::Behavioural: return "behavioural";
        case Regime::AboveRange: return "above-range";
    }
    return "unknown";
}

RegimeBounds regime_bounds(const InvestorProfile& profile, double c0) {
    validate_pairing(profile, c0);
    if (profile.alpha() == 1.0) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }
    const double conservatism = 1.0 - profile.alpha();
    return {(profile.c_min() - c0) / conservatism, (profile.c_max() - c0) / conservatism};
}

Regime classify_regime(const InvestorProfile& profile, double c0, double delta) {
    validate_pairing(profile, c0);
    if (profile.alpha() == 1.0) {
        return Regime::Behavioural;
    }
    // Compared in price space, the same test the scope edges use. Dividing by
    // 1 - alpha first would misplace boundary deviations by an ulp whenever
    // alpha has no exact binary form (0.8 for instance).
    const double anchor = c0 + delta;
    if (anchor <= profile.c_min() + profile.alpha() * delta) {
        return Regime::BelowRange;
    }
    if (anchor >= profile.c_max() + profile.alpha() * delta) {
        return Regime::AboveRange;
    }
    return Regime::Behavioural;
}

ScopeInterval scope(const InvestorProfile& profile, double c0, double delta) {
    const Regime regime = classify_regime(profile, c0, delta);
    const double anchor = c0 + delta;
    const double lo = regime == Regime::BelowRange ? anchor : profile.c_min() + profile.alpha() * delta;
    const double hi = regime == Regime::AboveRange ? anchor : profile.c_max() + profile.alpha() * delta;
    // Rounding next to a regime bound must not push an edge across the anchor.
    return {std::min(lo, anchor), anchor, std::max(hi, anchor)};
}

ScopeInterval scope(const InvestorProfile& profile, const MarketContext& ctx) {
    ScopeInterval s = scope(profile, ctx.c0(), ctx.deviation());
    // c0 + (p - c0) can differ from p in the last ulp; the anchor is the quote.
    const double anchor = ctx.market_price();
    s.lo = s.lo == s.anchor ? anchor : std::min(s.lo, anchor);
    s.hi = s.hi == s.anchor ? anchor : std::max(s.hi, anchor);
    s.anchor = anchor;
    return s;
}

double standardize(const ScopeInterval& scope, double p) {
    if (!scope.contains(p)) {
        throw RangeError("price outside the scope interval");
    }
    if (p == scope.anchor) {
        return 0.0;
    }
    if (p < scope.anchor) {
        return (p - scope.anchor) / (scope.anchor - scope.lo);
    }
    return (p - scope.anchor) / (scope.hi - scope.anchor);
}

double destandardize(const ScopeInterval& scope, double beta) {
    if (!(beta >= -1.0 && beta <= 1.0)) {
        throw RangeError("standardized coordinate outside [-1, 1]");
    }
    if (beta == -1.0) return scope.lo;
    if (beta == 1.0) return scope.hi;
    if (beta < 0.0) return scope.anchor + beta * (scope.anchor - scope.lo);
    if (beta > 0.0) return scope.anchor + beta * (scope.hi - scope.anchor);
    return scope.anchor;
}

}  // namespace bpv
