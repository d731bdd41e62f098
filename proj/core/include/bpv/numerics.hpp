#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bpv/profile.hpp"

namespace bpv {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_depth = 50;

    /// Throws DomainError on non-positive tolerances or max_depth < 1.
    void validate() const;
};

struct RootSpec {
    double x_tol = 1e-8;
    int max_iter = 200;

    void validate() const;
};

using RealFunction = std::function<double(double)>;

/// Adaptive Simpson quadrature of f over [a, b], run independently on every
/// piece between consecutive breakpoints. Each piece samples its end points
/// one ulp inside, so a jump located exactly at a breakpoint contributes its
/// one-sided limits. Breakpoints outside (a, b) are ignored.
///
/// Throws ConvergenceError (carrying the failing sub-interval) when a piece
/// has not met its tolerance at max_depth.
[[nodiscard]] double integrate(const RealFunction& f, double a, double b,
                               std::span<const double> breakpoints = {},
                               const QuadratureSpec& spec = {});

struct Bracket {
    double lo;
    double hi;
};

struct BisectionResult {
    double root;     // midpoint of the final bracket
    Bracket bracket; // width <= x_tol, sign change preserved
    int iterations;
};

/// Bisection on a sign-changing bracket. Throws InvalidBracketError unless
/// f(a) * f(b) < 0, ConvergenceError if max_iter is exhausted first.
[[nodiscard]] BisectionResult bisect_bracket(const RealFunction& f, double a, double b,
                                             const RootSpec& spec = {});

[[nodiscard]] inline double bisect(const RealFunction& f, double a, double b,
                                   const RootSpec& spec = {}) {
    return bisect_bracket(f, a, b, spec).root;
}

/// Centroid of the membership curve: the investor's average potential present
/// value. Both integrals are split at the anchor and at every mapped reference
/// knot. Throws DegenerateMassError when the membership mass is below abs_tol.
[[nodiscard]] double average_ppv(const InvestorProfile& profile, const MarketContext& ctx,
                                 const QuadratureSpec& spec = {});

/// average_ppv - market price. Positive means the investor sees the market
/// price as depressed (buy side), negative as inflated (sell side). Computed
/// relative to the anchor to avoid cancellation near the root.
[[nodiscard]] double stance_gap(const InvestorProfile& profile, const MarketContext& ctx,
                                const QuadratureSpec& spec = {});
[[nodiscard]] double stance_gap(const InvestorProfile& profile, double c0, double delta,
                                const QuadratureSpec& spec = {});

struct ThresholdScan {
    double step = 0.05;
    /// Upper end of the scan when the behavioural regime is unbounded
    /// (alpha = 1), as a deviation. Defaults to c0 (market price 2 * c0).
    std::optional<double> unbounded_upper;
};

/// Deviation interval scanned for stance thresholds: the behavioural regime,
/// closed at finite bounds, restricted to positive market prices, and capped
/// at ThresholdScan::unbounded_upper when alpha = 1.
[[nodiscard]] Bracket threshold_scan_range(const InvestorProfile& profile, double c0,
                                           const ThresholdScan& scan = {});

struct StanceThreshold {
    double delta;   // root of the stance gap
    double gap;     // stance gap evaluated at delta
    Bracket bracket;
};

/// Every sign change of the stance gap over the scan range, refined by
/// bisection, in increasing order. Empty when the gap keeps one sign.
[[nodiscard]] std::vector<StanceThreshold> find_stance_thresholds(const InvestorProfile& profile,
                                                                  double c0,
                                                                  const RootSpec& root_spec = {},
                                                                  const QuadratureSpec& quad_spec = {},
                                                                  const ThresholdScan& scan = {});

/// Deviation at which the investor switches stance. With a bracket, bisects it
/// directly (InvalidBracketError without a sign change); otherwise returns the
/// first threshold found by scanning (NoSignChangeError when there is none).
[[nodiscard]] double solve_stance_threshold(const InvestorProfile& profile, double c0,
                                            std::optional<Bracket> bracket = std::nullopt,
                                            const RootSpec& root_spec = {},
                                            const QuadratureSpec& quad_spec = {},
                                            const ThresholdScan& scan = {});

}  // namespace bpv
