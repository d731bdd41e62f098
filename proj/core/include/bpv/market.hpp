#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bpv/numerics.hpp"
#include "bpv/profile.hpp"

namespace bpv {

enum class StanceKind { Buyer, Seller, Neutral };

[[nodiscard]] const char* to_string(StanceKind kind) noexcept;

struct Stance {
    StanceKind kind;
    double gap;  // average PPV minus market price
};

inline constexpr double kDefaultNeutralEps = 1e-9;

/// Buyer when gap > eps, Seller when gap < -eps, Neutral otherwise.
[[nodiscard]] StanceKind classify_gap(double gap, double eps);

[[nodiscard]] Stance stance(const InvestorProfile& profile, const MarketContext& ctx,
                            double eps = kDefaultNeutralEps, const QuadratureSpec& spec = {});

struct Investor {
    std::string name;
    InvestorProfile profile;
};

struct InvestorStance {
    std::string name;
    std::optional<Stance> stance;  // empty when evaluation failed
    std::string error;
};

struct BalanceReport {
    std::vector<InvestorStance> investors;
    std::size_t buyer_count = 0;
    std::size_t seller_count = 0;
    std::size_t neutral_count = 0;
    std::size_t failed_count = 0;
    bool coexistence = false;  // at least one buyer and one seller
};

/// Stance of every investor at one market price. Per-investor failures are
/// recorded in the report rather than thrown. Throws DomainError for an empty
/// population.
[[nodiscard]] BalanceReport market_report(std::span<const Investor> investors, const MarketContext& ctx,
                                          double eps = kDefaultNeutralEps,
                                          const QuadratureSpec& spec = {});

/// Open price interval (lo, hi).
struct PriceBand {
    double lo;
    double hi;

    [[nodiscard]] bool contains(double price) const noexcept { return price > lo && price < hi; }
};

struct CoexistenceOptions {
    double eps = kDefaultNeutralEps;
    QuadratureSpec quad;
    RootSpec root;
    ThresholdScan scan;
};

/// Market prices at which `buyer` is a Buyer while `seller` is a Seller.
///
/// The deviation axis is cut at every stance threshold of either investor
/// (and at the ends of their combined scan ranges); a cell belongs to the
/// result when the stances at its midpoint match. Below both scan ranges
/// every investor buys and above them every investor sells, so no band
/// exists outside. Bands are returned as open price intervals in increasing
/// order; empty when the stances never pair up.
[[nodiscard]] std::vector<PriceBand> coexistence_interval(const InvestorProfile& buyer,
                                                          const InvestorProfile& seller, double c0,
                                                          const CoexistenceOptions& options = {});

}  // namespace bpv
