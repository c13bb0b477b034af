#include "ssrjd/model.hpp"

#include "ssrjd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssrjd {

namespace {

// Tolerance on date arithmetic (generated schedules accumulate rounding).
constexpr double kDateEps = 1e-12;

void requirePositive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(field, "must be finite and strictly positive");
    }
}

}  // namespace

double IntensityParams::h() const noexcept { return std::sqrt(kappa * kappa + 2.0 * nu * nu); }

double IntensityParams::fellerRatio() const noexcept { return 2.0 * kappa * mu / (nu * nu); }

bool IntensityParams::fellerHolds() const noexcept { return 2.0 * kappa * mu > nu * nu; }

ValidatedParams validateParams(const IntensityParams& p, FellerMode mode) {
    requirePositive(p.y0, "y0");
    requirePositive(p.kappa, "kappa");
    requirePositive(p.mu, "mu");
    requirePositive(p.nu, "nu");
    if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) {
        throw ValidationError("alpha", "must be finite and nonnegative");
    }
    requirePositive(p.gamma, "gamma");

    const double h = p.h();
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ValidationError("nu", "derived h = sqrt(kappa^2 + 2 nu^2) is not finite");
    }

    ValidatedParams out{p, {}};
    if (!p.fellerHolds()) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "Feller condition violated: 2*kappa*mu = " << 2.0 * p.kappa * p.mu
            << " <= nu^2 = " << p.nu * p.nu;
        if (mode == FellerMode::Strict) {
            throw ValidationError("nu", msg.str());
        }
        out.warnings.push_back(msg.str());
    }
    return out;
}

PiecewiseConstant::PiecewiseConstant(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (values_.size() != knots_.size() + 1) {
        throw ValidationError("values", "expected one more level than knots");
    }
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i]) || (i > 0 && !(knots_[i] > knots_[i - 1]))) {
            throw ValidationError("knots", "must be finite and strictly increasing");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw ValidationError("values", "must be finite");
    }
    cumulative_.resize(knots_.size());
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        acc += values_[i] * (knots_[i] - prev);
        cumulative_[i] = acc;
        prev = knots_[i];
    }
}

double PiecewiseConstant::value(double t) const {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    return values_[static_cast<std::size_t>(it - knots_.begin())];
}

double PiecewiseConstant::primitive(double t) const {
    const auto idx = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), t) -
                                              knots_.begin());
    if (idx == 0) return values_[0] * t;
    return cumulative_[idx - 1] + values_[idx] * (t - knots_[idx - 1]);
}

double PiecewiseConstant::integral(double t1, double t2) const {
    if (t1 > t2) throw ArgumentError("integral: t1 must not exceed t2");
    if (t1 == t2) return 0.0;
    return primitive(t2) - primitive(t1);
}

ShiftFunction::ShiftFunction(double level) : curve_(level) {
    if (!(level >= 0.0)) throw ValidationError("psi_values", "shift must be nonnegative");
}

ShiftFunction::ShiftFunction(std::vector<double> knots, std::vector<double> values)
    : curve_(std::move(knots), std::move(values)) {
    for (double v : curve_.values()) {
        if (!(v >= 0.0)) throw ValidationError("psi_values", "shift must be nonnegative");
    }
}

double ShiftFunction::integral(double t1, double t2) const { return curve_.integral(t1, t2); }

ShiftFunction ShiftFunction::shifted(double c) const {
    std::vector<double> knots(curve_.knots().begin(), curve_.knots().end());
    std::vector<double> values(curve_.values().begin(), curve_.values().end());
    for (double& v : values) v += c;
    return ShiftFunction(std::move(knots), std::move(values));
}

double shiftIntegral(const ShiftFunction& psi, double t1, double t2) {
    if (t1 > t2) throw ArgumentError("shiftIntegral: t1 must not exceed t2");
    return psi.integral(t1, t2);
}

DiscountCurve::DiscountCurve(double flatRate) : curve_(flatRate) {
    if (!(flatRate >= 0.0 && flatRate <= 1.0)) {
        throw ValidationError("rate_values", "short rate must lie in [0, 1]");
    }
}

DiscountCurve::DiscountCurve(std::vector<double> knots, std::vector<double> rates)
    : curve_(std::move(knots), std::move(rates)) {
    for (double r : curve_.values()) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw ValidationError("rate_values", "short rate must lie in [0, 1]");
        }
    }
}

double DiscountCurve::discount(double t, double T) const {
    if (t > T) throw ArgumentError("discount: t must not exceed T");
    return std::exp(-curve_.integral(t, T));
}

PaymentSchedule::PaymentSchedule(std::vector<double> dates) : dates_(std::move(dates)) {
    if (dates_.size() < 2) throw ValidationError("dates", "need at least two dates");
    for (std::size_t i = 0; i < dates_.size(); ++i) {
        if (!std::isfinite(dates_[i]) || dates_[i] < 0.0) {
            throw ValidationError("dates", "must be finite and nonnegative");
        }
        if (i == 0) continue;
        const double accrual = dates_[i] - dates_[i - 1];
        if (!(accrual > 0.0)) throw ValidationError("dates", "must be strictly increasing");
        if (accrual > 1.0 + kDateEps) {
            throw ValidationError("dates", "accrual periods must not exceed one year");
        }
    }
}

PaymentSchedule PaymentSchedule::regular(double start, double end, int frequency) {
    if (frequency < 1) throw ValidationError("frequency", "must be at least 1");
    if (!(end > start)) throw ValidationError("dates", "end must be after start");
    const double step = 1.0 / frequency;
    const auto full = static_cast<long>(std::floor((end - start) / step + kDateEps));
    std::vector<double> dates;
    dates.reserve(static_cast<std::size_t>(full) + 2);
    dates.push_back(start);
    const double stub = (end - start) - static_cast<double>(full) * step;
    if (stub > kDateEps) dates.push_back(start + stub);
    const double anchor = dates.back();
    for (long i = 1; i <= full; ++i) {
        dates.push_back(i == full ? end : anchor + static_cast<double>(i) * step);
    }
    return PaymentSchedule(std::move(dates));
}

double PaymentSchedule::lastPaymentBefore(double u) const {
    if (u < start() - kDateEps || u > end() + kDateEps) {
        throw ArgumentError("lastPaymentBefore: u outside the schedule");
    }
    const auto it = std::upper_bound(dates_.begin(), dates_.end(), u + kDateEps);
    return *std::prev(it);
}

double PaymentSchedule::accrualStartLeftLimit(double u) const {
    if (u < start() - kDateEps || u > end() + kDateEps) {
        throw ArgumentError("accrualStartLeftLimit: u outside the schedule");
    }
    if (u <= start() + kDateEps) return start();
    const auto it = std::lower_bound(dates_.begin(), dates_.end(), u - kDateEps);
    return *std::prev(it);
}

void SwaptionSpec::validate() const {
    if (!(valuationTime <= optionMaturity())) {
        throw ValidationError("valuation_time", "must not exceed the option maturity");
    }
    if (!(lossGivenDefault > 0.0 && lossGivenDefault <= 1.0)) {
        throw ValidationError("lgd", "loss given default must lie in (0, 1]");
    }
    if (!(strike >= 0.0) || !std::isfinite(strike)) {
        throw ValidationError("strike", "must be finite and nonnegative");
    }
}

}  // namespace ssrjd
