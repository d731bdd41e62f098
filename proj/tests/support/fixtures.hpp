#pragma once

#include "bpv/bpv.hpp"
#include "oracles.hpp"

namespace fixtures {

inline constexpr double kC0 = 100.0;

inline bpv::InvestorProfile investor_a() { return {95.0, 110.0, 0.2}; }
inline bpv::InvestorProfile investor_b() { return {90.0, 105.0, 0.8}; }

/// Symmetric around kC0: zero stance gap at equilibrium.
inline bpv::InvestorProfile symmetric() { return {90.0, 110.0, 0.5}; }

inline bpv::InvestorProfile to_bpv(const oracle::Profile& p) {
    return {p.c_min, p.c_max, p.alpha, bpv::ReferenceDistribution::trapezoidal(p.plateau)};
}

}  // namespace fixtures
