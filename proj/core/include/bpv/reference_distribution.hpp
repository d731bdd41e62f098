#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bpv {

/// One knot of a piecewise-linear acceptance profile on [-1, 1].
struct Knot {
    double beta;
    double value;

    friend bool operator==(const Knot&, const Knot&) = default;
};

enum class ReferenceViolationKind {
    KnotCount,     // fewer than three knots
    KnotOrder,     // betas not strictly increasing
    KnotRange,     // beta outside [-1, 1] or value outside [0, 1]
    MissingKnot,   // no knot at -1, 0 or 1
    Apex,          // v0(0) != 1
    Endpoint,      // v0(-1) != 0 or v0(1) != 0
    Monotonicity,  // decreasing on [-1, 0] or increasing on [0, 1]
};

[[nodiscard]] const char* to_string(ReferenceViolationKind kind) noexcept;

struct ReferenceViolation {
    ReferenceViolationKind kind;
    std::string message;
};

/// Returns the first violated condition, or nothing when the knots describe a
/// valid reference acceptance distribution: v0(0) = 1, v0(+-1) = 0,
/// nondecreasing on [-1, 0] and nonincreasing on [0, 1].
[[nodiscard]] std::optional<ReferenceViolation> validate_reference(std::span<const Knot> knots);

/// Reference acceptance distribution v0 at financial equilibrium, stored as a
/// piecewise-linear function through validated knots.
class ReferenceDistribution {
public:
    /// Throws DomainError carrying the first violation.
    explicit ReferenceDistribution(std::vector<Knot> knots);

    /// v0(beta) = 1 - |beta|.
    [[nodiscard]] static ReferenceDistribution triangular();

    /// Flat top on [-plateau, plateau], linear feet to +-1. plateau in [0, 1).
    [[nodiscard]] static ReferenceDistribution trapezoidal(double plateau);

    /// Linear interpolation between knots. beta must lie in [-1, 1].
    [[nodiscard]] double operator()(double beta) const;

    [[nodiscard]] std::span<const Knot> knots() const noexcept { return knots_; }

    /// Knot betas strictly inside (-1, 0) or (0, 1); these are the kinks that
    /// quadrature must respect once mapped to price space.
    [[nodiscard]] std::vector<double> interior_betas() const;

    [[nodiscard]] bool is_triangular() const noexcept;

    friend bool operator==(const ReferenceDistribution&, const ReferenceDistribution&) = default;

private:
    std::vector<Knot> knots_;
};

}  // namespace bpv
