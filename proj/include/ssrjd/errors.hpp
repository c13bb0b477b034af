#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ssrjd {

/// Bad argument to a pricing function (ordering of times, negative levels, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A data-type invariant failed; `field()` names the offending input.
class ValidationError : public ArgumentError {
public:
    ValidationError(std::string field, const std::string& what)
        : ArgumentError(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A numerical procedure failed to reach its tolerance. Carries the best estimate.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double estimate, double errorBound)
        : std::runtime_error(what), estimate_(estimate), errorBound_(errorBound) {}

    double estimate() const noexcept { return estimate_; }
    double errorBound() const noexcept { return errorBound_; }

private:
    double estimate_;
    double errorBound_;
};

/// Raised when the critical-level root is requested in the deep-in-the-money regime.
class BranchError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input outside the domain of an inversion (e.g. price outside the no-arbitrage band).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Shift bootstrap could not honour positivity on interval `interval()` ([start, end)).
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& what, std::size_t interval, double start, double end)
        : std::runtime_error(what), interval_(interval), start_(start), end_(end) {}

    std::size_t interval() const noexcept { return interval_; }
    double intervalStart() const noexcept { return start_; }
    double intervalEnd() const noexcept { return end_; }

private:
    std::size_t interval_;
    double start_;
    double end_;
};

}  // namespace ssrjd
