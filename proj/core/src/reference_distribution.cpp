#include "bpv/reference_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bpv/errors.hpp"

namespace bpv {

namespace {

std::string describe(const Knot& k) {
    std::ostringstream os;
    os << "(" << k.beta << ", " << k.value << ")";
    return os.str();
}

const Knot* find_knot(std::span<const Knot> knots, double beta) {
    auto it = std::find_if(knots.begin(), knots.end(),
                           [beta](const Knot& k) { return k.beta == beta; });
    return it == knots.end() ? nullptr : &*it;
}

}  // namespace

const char* to_string(ReferenceViolationKind kind) noexcept {
    switch (kind) {
        case ReferenceViolationKind::KnotCount: return "knot-count";
        case ReferenceViolationKind::KnotOrder: return "knot-order";
        case ReferenceViolationKind::KnotRange: return "knot-range";
        case ReferenceViolationKind::MissingKnot: return "missing-knot";
        case ReferenceViolationKind::Apex: return "apex";
        case ReferenceViolationKind::Endpoint: return "endpoint";
        case ReferenceViolationKind::Monotonicity: return "monotonicity";
    }
    return "unknown";
}

std::optional<ReferenceViolation> validate_reference(std::span<const Knot> knots) {
    using K = ReferenceViolationKind;
    if (knots.size() < 3) {
        return ReferenceViolation{K::KnotCount, "at least the knots at -1, 0 and 1 are required"};
    }
    for (const auto& k : knots) {
        if (!std::isfinite(k.beta) || !std::isfinite(k.value) || k.beta < -1.0 || k.beta > 1.0 ||
            k.value < 0.0 || k.value > 1.0) {
            return ReferenceViolation{K::KnotRange, "knot " + describe(k) + " outside [-1,1] x [0,1]"};
        }
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i - 1].beta < knots[i].beta)) {
            return ReferenceViolation{K::KnotOrder, "knot betas must be strictly increasing at " +
                                                        describe(knots[i])};
        }
    }
    const Knot* left = find_knot(knots, -1.0);
    const Knot* apex = find_knot(knots, 0.0);
    const Knot* right = find_knot(knots, 1.0);
    if (left == nullptr || apex == nullptr || right == nullptr) {
        return ReferenceViolation{K::MissingKnot, "knots at beta = -1, 0 and 1 are required"};
    }
    if (apex->value != 1.0) {
        return ReferenceViolation{K::Apex, "v0(0) must equal 1, got " + describe(*apex)};
    }
    if (left->value != 0.0) {
        return ReferenceViolation{K::Endpoint, "v0(-1) must equal 0, got " + describe(*left)};
    }
    if (right->value != 0.0) {
        return ReferenceViolation{K::Endpoint, "v0(1) must equal 0, got " + describe(*right)};
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        const Knot& a = knots[i - 1];
        const Knot& b = knots[i];
        if (b.beta <= 0.0 && b.value < a.value) {
            return ReferenceViolation{K::Monotonicity, "decreasing on [-1,0] between " + describe(a) +
                                                           " and " + describe(b)};
        }
        if (a.beta >= 0.0 && b.value > a.value) {
            return ReferenceViolation{K::Monotonicity, "increasing on [0,1] between " + describe(a) +
                                                           " and " + describe(b)};
        }
    }
    return std::nullopt;
}

ReferenceDistribution::ReferenceDistribution(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (auto violation = validate_reference(knots_)) {
        throw DomainError(std::string("invalid reference distribution (") + to_string(violation->kind) +
                          "): " + violation->message);
    }
}

ReferenceDistribution ReferenceDistribution::triangular() {
    return ReferenceDistribution({{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}});
}

ReferenceDistribution ReferenceDistribution::trapezoidal(double plateau) {
    if (!(plateau >= 0.0 && plateau < 1.0)) {
        throw DomainError("trapezoid plateau must lie in [0, 1)");
    }
    if (plateau == 0.0) {
        return triangular();
    }
    return ReferenceDistribution(
        {{-1.0, 0.0}, {-plateau, 1.0}, {0.0, 1.0}, {plateau, 1.0}, {1.0, 0.0}});
}

double ReferenceDistribution::operator()(double beta) const {
    if (!(beta >= -1.0 && beta <= 1.0)) {
        throw RangeError("standardized coordinate outside [-1, 1]");
    }
    auto upper = std::lower_bound(knots_.begin(), knots_.end(), beta,
                                  [](const Knot& k, double b) { return k.beta < b; });
    if (upper->beta == beta) {
        return upper->value;
    }
    const Knot& b = *upper;
    const Knot& a = *(upper - 1);
    return a.value + (beta - a.beta) / (b.beta - a.beta) * (b.value - a.value);
}

std::vector<double> ReferenceDistribution::interior_betas() const {
    std::vector<double> out;
    for (const auto& k : knots_) {
        if (k.beta != -1.0 && k.beta != 0.0 && k.beta != 1.0) {
            out.push_back(k.beta);
        }
    }
    return out;
}

bool ReferenceDistribution::is_triangular() const noexcept {
    return knots_.size() == 3;
}

}  // namespace bpv
