#pragma once

// Model, curve and contract data types. Everything here is immutable after
// construction; pricing lives in the other headers.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ssrjd {

/// Parameters of the square-root jump-diffusion factor y:
///   dy = kappa (mu - y) dt + nu sqrt(y) dW + dJ,
/// where J is compound Poisson with arrival rate `alpha` and exponential
/// jump sizes of mean `gamma`. Units are per year.
struct IntensityParams {
    double y0 = 0.0;
    double kappa = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;

    /// sqrt(kappa^2 + 2 nu^2)
    double h() const noexcept;
    /// 2 kappa mu / nu^2; the Feller condition is fellerRatio() > 1.
    double fellerRatio() const noexcept;
    bool fellerHolds() const noexcept;
};

enum class FellerMode { Strict, Lenient };

struct ValidatedParams {
    IntensityParams params;
    std::vector<std::string> warnings;
};

/// Checks positivity (alpha may be zero) and the Feller condition. In lenient
/// mode a Feller violation becomes a warning instead of a ValidationError.
ValidatedParams validateParams(const IntensityParams& p, FellerMode mode = FellerMode::Strict);

/// Right-continuous step function on [0, inf): values[0] on (-inf, knots[0]),
/// values[i] on [knots[i-1], knots[i]), values.back() beyond the last knot.
class PiecewiseConstant {
public:
    PiecewiseConstant() : values_{0.0} {}
    explicit PiecewiseConstant(double level) : values_{level} {}
    PiecewiseConstant(std::vector<double> knots, std::vector<double> values);

    double value(double t) const;
    /// Exact integral over [t1, t2]; requires t1 <= t2.
    double integral(double t1, double t2) const;

    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const double> values() const noexcept { return values_; }

private:
    double primitive(double t) const;

    std::vector<double> knots_;
    std::vector<double> values_;
    std::vector<double> cumulative_;  // integral from 0 to knots_[i]
};

/// Deterministic, nonnegative shift psi(t) of the default intensity.
class ShiftFunction {
public:
    ShiftFunction() = default;
    explicit ShiftFunction(double level);
    ShiftFunction(std::vector<double> knots, std::vector<double> values);

    static ShiftFunction zero() { return ShiftFunction{}; }

    double value(double t) const { return curve_.value(t); }
    double integral(double t1, double t2) const;
    /// Copy with every level raised by `c` (must stay nonnegative).
    ShiftFunction shifted(double c) const;

    std::span<const double> knots() const noexcept { return curve_.knots(); }
    std::span<const double> values() const noexcept { return curve_.values(); }

private:
    PiecewiseConstant curve_;
};

/// Integral of psi over [t1, t2] (argument error when t1 > t2).
double shiftIntegral(const ShiftFunction& psi, double t1, double t2);

/// Deterministic short-rate curve with 0 <= r(u) <= 1.
class DiscountCurve {
public:
    DiscountCurve() = default;
    explicit DiscountCurve(double flatRate);
    DiscountCurve(std::vector<double> knots, std::vector<double> rates);

    double rate(double u) const { return curve_.value(u); }
    /// D(t, T) = exp(-int_t^T r); requires t <= T.
    double discount(double t, double T) const;

    std::span<const double> knots() const noexcept { return curve_.knots(); }
    std::span<const double> rates() const noexcept { return curve_.values(); }

private:
    PiecewiseConstant curve_;
};

/// Dates T_a < ... < T_b in year fractions with accruals in (0, 1].
class PaymentSchedule {
public:
    explicit PaymentSchedule(std::vector<double> dates);

    /// Dates start, start + 1/frequency, ... ending exactly at `end`
    /// (a short first period absorbs any remainder).
    static PaymentSchedule regular(double start, double end, int frequency = 4);

    double start() const noexcept { return dates_.front(); }
    double end() const noexcept { return dates_.back(); }
    std::size_t periods() const noexcept { return dates_.size() - 1; }
    std::span<const double> dates() const noexcept { return dates_; }
    /// alpha_i = T_i - T_{i-1}, for i in [1, periods()].
    double accrual(std::size_t i) const { return dates_.at(i) - dates_.at(i - 1); }

    /// Largest schedule date <= u, for u in [start(), end()].
    double lastPaymentBefore(double u) const;
    /// Start of the period that contains u under the left-limit convention:
    /// at an interior payment date the period just ending is used.
    double accrualStartLeftLimit(double u) const;

private:
    std::vector<double> dates_;
};

/// European payer default swaption, knocked out at default before expiry.
struct SwaptionSpec {
    double valuationTime = 0.0;
    PaymentSchedule schedule;
    double strike = 0.0;
    double lossGivenDefault = 1.0;

    double optionMaturity() const noexcept { return schedule.start(); }
    void validate() const;
};

/// Intensity model: lambda(t) = psi(t) + y(t).
struct Model {
    IntensityParams params;
    ShiftFunction shift;
};

}  // namespace ssrjd
