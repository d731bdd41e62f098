#include "bpv/market.hpp"

#include <algorithm>
#include <cmath>

#include "bpv/errors.hpp"

namespace bpv {

const char* to_string(StanceKind kind) noexcept {
    switch (kind) {
        case StanceKind::Buyer: return "buyer";
        case StanceKind::Seller: return "seller";
        case StanceKind::Neutral: return "neutral";
    }
    return "unknown";
}

StanceKind classify_gap(double gap, double eps) {
    if (!(eps >= 0.0)) {
        throw DomainError("neutral band eps must be non-negative");
    }
    if (gap > eps) return StanceKind::Buyer;
    if (gap < -eps) return StanceKind::Seller;
    return StanceKind::Neutral;
}

Stance stance(const InvestorProfile& profile, const MarketContext& ctx, double eps,
              const QuadratureSpec& spec) {
    if (!(eps >= 0.0)) {
        throw DomainError("neutral band eps must be non-negative");
    }
    const double gap = stance_gap(profile, ctx, spec);
    return {classify_gap(gap, eps), gap};
}

BalanceReport market_report(std::span<const Investor> investors, const MarketContext& ctx, double eps,
                            const QuadratureSpec& spec) {
    if (investors.empty()) {
        throw DomainError("market report needs at least one investor");
    }
    BalanceReport report;
    report.investors.reserve(investors.size());
    for (const auto& investor : investors) {
        InvestorStance entry{investor.name, std::nullopt, {}};
        try {
            entry.stance = stance(investor.profile, ctx, eps, spec);
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        if (!entry.stance) {
            ++report.failed_count;
        } else {
            switch (entry.stance->kind) {
                case StanceKind::Buyer: ++report.buyer_count; break;
                case StanceKind::Seller: ++report.seller_count; break;
                case StanceKind::Neutral: ++report.neutral_count; break;
            }
        }
        report.investors.push_back(std::move(entry));
    }
    report.coexistence = report.buyer_count > 0 && report.seller_count > 0;
    return report;
}

std::vector<PriceBand> coexistence_interval(const InvestorProfile& buyer, const InvestorProfile& seller,
                                            double c0, const CoexistenceOptions& options) {
    const Bracket buyer_range = threshold_scan_range(buyer, c0, options.scan);
    const Bracket seller_range = threshold_scan_range(seller, c0, options.scan);

    std::vector<double> cuts{std::min(buyer_range.lo, seller_range.lo),
                             std::max(buyer_range.hi, seller_range.hi)};
    for (const auto* profile : {&buyer, &seller}) {
        for (const auto& t : find_stance_thresholds(*profile, c0, options.root, options.quad, options.scan)) {
            cuts.push_back(t.delta);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<PriceBand> bands;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        const MarketContext ctx = MarketContext::at_deviation(c0, mid);
        const bool buys = stance(buyer, ctx, options.eps, options.quad).kind == StanceKind::Buyer;
        if (!buys) continue;
        const bool sells = stance(seller, ctx, options.eps, options.quad).kind == StanceKind::Seller;
        if (!sells) continue;
        const double lo = c0 + cuts[i];
        const double hi = c0 + cuts[i + 1];
        if (!bands.empty() && bands.back().hi == lo) {
            bands.back().hi = hi;
        } else {
            bands.push_back({lo, hi});
        }
    }
    return bands;
}

}  // namespace bpv
