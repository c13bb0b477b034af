#include "ssrjd/black.hpp"

#include "ssrjd/cds.hpp"
#include "ssrjd/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ssrjd {

double normCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double blackPayerPrice(double annuity, double forward, double strike, double sigma, double expiry) {
    if (!(annuity > 0.0)) throw ArgumentError("Black: annuity must be positive");
    if (!(forward > 0.0)) throw ArgumentError("Black: forward spread must be positive");
    if (!(strike > 0.0)) throw ArgumentError("Black: strike must be positive");
    if (!(expiry > 0.0)) throw ArgumentError("Black: expiry must be positive");
    if (!(sigma >= 0.0)) throw ArgumentError("Black: volatility must be nonnegative");
    if (sigma == 0.0) return annuity * std::max(forward - strike, 0.0);
    const double sd = sigma * std::sqrt(expiry);
    const double d1 = (std::log(forward / strike) + 0.5 * sd * sd) / sd;
    const double d2 = d1 - sd;
    return annuity * (forward * normCdf(d1) - strike * normCdf(d2));
}

double impliedVol(double annuity, double forward, double strike, double expiry, double price) {
    const double intrinsic = blackPayerPrice(annuity, forward, strike, 0.0, expiry);
    const double upper = annuity * forward;
    const double slack = 1e-14 * upper;
    if (price < intrinsic - slack) {
        throw DomainError("implied vol: price below the intrinsic value (lower bound)");
    }
    if (!(price < upper)) {
        throw DomainError("implied vol: price not below annuity * forward (upper bound)");
    }
    if (price <= intrinsic + slack) return 0.0;

    auto excess = [&](double s) {
        return blackPayerPrice(annuity, forward, strike, s, expiry) - price;
    };
    double hi = 1.0;
    while (excess(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw DomainError("implied vol: no volatility reaches the price");
    }
    std::uintmax_t maxIter = 300;
    const auto [a, b] = boost::math::tools::toms748_solve(
        excess, 0.0, hi, excess(0.0), excess(hi),
        [](double lo, double up) { return up - lo <= 1e-15 * std::max(1.0, up); }, maxIter);
    return std::abs(excess(a)) <= std::abs(excess(b)) ? a : b;
}

Smile generateSmile(const Model& m, const DiscountCurve& curve, const SwaptionSpec& specTemplate,
                    std::span<const double> strikes, double t, double yt,
                    const SwaptionOptions& opts) {
    const CdsLegBreakdown legs = cdsBreakdown(m, curve, specTemplate.schedule, t, yt, 0.0,
                                              specTemplate.lossGivenDefault, opts.legs);
    Smile smile;
    smile.annuity = legs.annuity;
    smile.forward = legs.fairSpread;
    smile.expiry = specTemplate.optionMaturity() - t;

    SwaptionSpec spec = specTemplate;
    for (double K : strikes) {
        if (!(K > 0.0)) throw ArgumentError("smile: strikes must be positive");
        spec.strike = K;
        SmilePoint pt;
        pt.strike = K;
        const DecompositionReport r = payerSwaption(m, curve, spec, t, yt, opts);
        pt.modelPrice = r.price;
        try {
            pt.impliedVol = impliedVol(smile.annuity, smile.forward, K, smile.expiry, r.price);
            pt.converged = pt.impliedVol > 0.0;
            if (!pt.converged) pt.note = "price at intrinsic value";
        } catch (const DomainError& e) {
            pt.note = e.what();
        }
        smile.points.push_back(pt);
    }
    return smile;
}

std::vector<double> defaultStrikeGrid(double atm, int count, double lo, double hi) {
    if (!(atm > 0.0) || count < 2 || !(lo > 0.0) || !(hi > lo)) {
        throw ArgumentError("strike grid: need atm > 0, count >= 2, 0 < lo < hi");
    }
    std::vector<double> out;
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(atm * std::exp(a + step * i));
    return out;
}

}  // namespace ssrjd
