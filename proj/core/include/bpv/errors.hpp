#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bpv {

/// Model inputs that violate a precondition (bounds ordering, alpha range,
/// non-positive prices, return rates outside a kind's domain).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A price or standardized coordinate outside the interval it must lie in.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Base for failures of the numerical machinery itself.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature or bisection ran out of depth/iterations.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : NumericalError(what), lo_(lo), hi_(hi) {}

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

class InvalidBracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The stance gap keeps one sign over the whole scanned deviation range.
class NoSignChangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Membership mass too small to form a centroid.
class DegenerateMassError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SamplingError : public NumericalError {
public:
    SamplingError(const std::string& what, std::size_t scenario)
        : NumericalError(what), scenario_(scenario) {}

    [[nodiscard]] std::size_t scenario() const noexcept { return scenario_; }

private:
    std::size_t scenario_;
};

}  // namespace bpv
