#pragma once

// Market quoting formula for payer default swaptions and implied volatility.

#include "ssrjd/model.hpp"
#include "ssrjd/swaption.hpp"

#include <span>
#include <string>
#include <vector>

namespace ssrjd {

/// Standard normal distribution function via erfc.
double normCdf(double x);

/// annuity * [R Phi(d1) - K Phi(d2)], d1,2 = (ln(R/K) +- sigma^2 T / 2) / (sigma sqrt T).
/// sigma = 0 gives annuity * max(R - K, 0).
double blackPayerPrice(double annuity, double forward, double strike, double sigma, double expiry);

/// Volatility reproducing `price`. Returns 0 when price equals the intrinsic value
/// (to within 1e-14 of annuity * forward). Throws DomainError naming the violated
/// bound when price lies outside [intrinsic, annuity * forward).
double impliedVol(double annuity, double forward, double strike, double expiry, double price);

struct SmilePoint {
    double strike = 0.0;
    double modelPrice = 0.0;
    double impliedVol = 0.0;
    bool converged = false;
    std::string note;  // reason when not converged
};

struct Smile {
    double annuity = 0.0;
    double forward = 0.0;
    double expiry = 0.0;
    std::vector<SmilePoint> points;
};

/// Prices every strike with the decomposition and inverts through the model's own
/// annuity and forward spread at (t, yt). `specTemplate` supplies the schedule and
/// loss given default; its strike is ignored.
Smile generateSmile(const Model& m, const DiscountCurve& curve, const SwaptionSpec& specTemplate,
                    std::span<const double> strikes, double t, double yt,
                    const SwaptionOptions& opts = {});

/// `count` log-spaced strikes from lo * atm to hi * atm.
std::vector<double> defaultStrikeGrid(double atm, int count = 21, double lo = 0.5, double hi = 2.0);

}  // namespace ssrjd
