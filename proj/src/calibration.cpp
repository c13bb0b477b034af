#include "ssrjd/calibration.hpp"

#include "ssrjd/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

namespace ssrjd {

namespace {

void checkQuotes(const std::vector<CdsQuote>& quotes) {
    double prev = 0.0;
    for (std::size_t i = 0; i < quotes.size(); ++i) {
        if (!(quotes[i].maturity > prev)) {
            throw ValidationError("quotes[" + std::to_string(i) + "].maturity",
                                  "maturities must be positive and increasing");
        }
        if (!(quotes[i].spread > 0.0)) {
            throw ValidationError("quotes[" + std::to_string(i) + "].spread",
                                  "spread must be positive");
        }
        prev = quotes[i].maturity;
    }
}

ShiftFunction withLevel(const std::vector<double>& knots, std::vector<double> levels,
                        double last) {
    levels.push_back(last);
    return ShiftFunction(knots, std::move(levels));
}

// Solves the levels in order. With `clamp` a negative level becomes 0 and the
// spread misfit is recorded; otherwise it is a CalibrationError.
LenientBootstrap bootstrap(const IntensityParams& params, const DiscountCurve& curve,
                           const std::vector<CdsQuote>& quotes, const BootstrapOptions& opts,
                           bool clamp) {
    checkQuotes(quotes);
    std::vector<double> knots;
    std::vector<double> levels;
    LenientBootstrap out;

    for (std::size_t i = 0; i < quotes.size(); ++i) {
        const CdsQuote& q = quotes[i];
        const PaymentSchedule schedule = PaymentSchedule::regular(0.0, q.maturity, opts.frequency);
        auto excess = [&](double level) {
            const Model m{params, withLevel(knots, levels, level)};
            return fairSpread(m, curve, schedule, 0.0, params.y0, opts.lossGivenDefault,
                              opts.legs) -
                   q.spread;
        };

        const double start = i == 0 ? 0.0 : quotes[i - 1].maturity;
        double level = 0.0;
        const double atZero = excess(0.0);
        if (atZero > 1e-12) {
            if (!clamp) {
                throw CalibrationError("CDS quote " + std::to_string(i) + " needs psi < 0 on [" +
                                           std::to_string(start) + ", " +
                                           std::to_string(q.maturity) + ")",
                                       i, start, q.maturity);
            }
            out.spreadErrors.push_back(atZero);
        } else if (atZero < 0.0) {
            double hi = std::max(2.0 * q.spread / opts.lossGivenDefault, 1e-4);
            double atHi = excess(hi);
            int doublings = 0;
            while (atHi < 0.0) {
                hi *= 2.0;
                atHi = excess(hi);
                if (++doublings > 60) {
                    throw CalibrationError("no shift level reaches CDS quote " + std::to_string(i),
                                           i, start, q.maturity);
                }
            }
            std::uintmax_t maxIter = 200;
            const auto [a, b] = boost::math::tools::toms748_solve(
                excess, 0.0, hi, atZero, atHi,
                [](double lo, double up) { return up - lo <= 1e-15 * std::max(1.0, up); },
                maxIter);
            level = std::abs(excess(a)) <= std::abs(excess(b)) ? a : b;
            out.spreadErrors.push_back(0.0);
        } else {
            out.spreadErrors.push_back(0.0);
        }

        levels.push_back(level);
        if (i + 1 < quotes.size()) knots.push_back(q.maturity);
    }
    if (levels.empty()) {
        out.shift = ShiftFunction::zero();
    } else {
        out.shift = ShiftFunction(knots, levels);
    }
    return out;
}

constexpr std::size_t kDim = 6;
using Point = std::array<double, kDim>;

IntensityParams fromLogs(const Point& x, bool jumps) {
    IntensityParams p;
    p.y0 = std::exp(x[0]);
    p.kappa = std::exp(x[1]);
    p.mu = std::exp(x[2]);
    p.nu = std::exp(x[3]);
    p.alpha = jumps ? std::exp(x[4]) : 0.0;
    p.gamma = std::exp(x[5]);
    return p;
}

}  // namespace

ShiftFunction bootstrapShift(const IntensityParams& params, const DiscountCurve& curve,
                             const std::vector<CdsQuote>& quotes, const BootstrapOptions& opts) {
    return bootstrap(params, curve, quotes, opts, false).shift;
}

LenientBootstrap bootstrapShiftClamped(const IntensityParams& params, const DiscountCurve& curve,
                                       const std::vector<CdsQuote>& quotes,
                                       const BootstrapOptions& opts) {
    return bootstrap(params, curve, quotes, opts, true);
}

FitReport fitParams(const IntensityParams& initial, const DiscountCurve& curve,
                    const std::vector<CdsQuote>& cdsQuotes,
                    const std::vector<SwaptionQuote>& swaptionQuotes, const FitOptions& opts) {
    if (swaptionQuotes.empty()) throw ArgumentError("fitParams: need at least one swaption quote");
    for (std::size_t i = 0; i < swaptionQuotes.size(); ++i) {
        if (!(swaptionQuotes[i].price > 0.0)) {
            throw ValidationError("swaptions[" + std::to_string(i) + "].price",
                                  "price must be positive");
        }
        swaptionQuotes[i].spec.validate();
    }
    checkQuotes(cdsQuotes);
    const bool jumps = initial.alpha > 0.0;
    const IntensityParams checked = validateParams(initial, FellerMode::Lenient).params;

    FitReport report;
    auto evaluate = [&](const Point& x, std::vector<double>* residuals, ShiftFunction* shift) {
        ++report.evaluations;
        const IntensityParams p = fromLogs(x, jumps);
        double penalty = 0.0;
        if (opts.feller == FellerMode::Strict && !p.fellerHolds()) {
            const double gap = 1.0 - p.fellerRatio();
            penalty += 1e2 * (gap + 1e-3) * (gap + 1e-3);
        }
        try {
            Model m{p, ShiftFunction::zero()};
            if (!cdsQuotes.empty()) {
                const LenientBootstrap b = bootstrapShiftClamped(p, curve, cdsQuotes, opts.bootstrap);
                m.shift = b.shift;
                for (std::size_t i = 0; i < cdsQuotes.size(); ++i) {
                    const double rel = b.spreadErrors[i] / cdsQuotes[i].spread;
                    penalty += opts.spreadPenalty * rel * rel;
                }
            }
            double sum = 0.0;
            for (const SwaptionQuote& q : swaptionQuotes) {
                const double model = payerSwaptionPrice(m, curve, q.spec, q.spec.valuationTime,
                                                        p.y0, opts.pricing);
                const double rel = (model - q.price) / q.price;
                if (residuals) residuals->push_back(rel);
                sum += rel * rel;
            }
            if (shift) *shift = m.shift;
            return sum + penalty;
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::max();
        } catch (const CalibrationError&) {
            return std::numeric_limits<double>::max();
        }
    };
    auto objective = [&](const Point& x) { return evaluate(x, nullptr, nullptr); };

    Point x0{std::log(checked.y0), std::log(checked.kappa), std::log(checked.mu),
             std::log(checked.nu), jumps ? std::log(checked.alpha) : 0.0,
             std::log(checked.gamma)};
    // Nelder-Mead on the active coordinates.
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < kDim; ++k) {
        if (k == 4 && !jumps) continue;
        if (k == 5 && !jumps) continue;
        active.push_back(k);
    }
    const std::size_t n = active.size();
    std::vector<Point> simplex(n + 1, x0);
    std::vector<double> f(n + 1);
    for (std::size_t k = 0; k < n; ++k) simplex[k + 1][active[k]] += opts.initialStep;
    for (std::size_t k = 0; k <= n; ++k) f[k] = objective(simplex[k]);

    std::vector<std::size_t> order(n + 1);
    auto sortSimplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        std::vector<Point> s2;
        std::vector<double> f2;
        for (std::size_t k : order) {
            s2.push_back(simplex[k]);
            f2.push_back(f[k]);
        }
        simplex = std::move(s2);
        f = std::move(f2);
    };
    auto along = [&](const Point& centroid, const Point& worst, double t) {
        Point p = centroid;
        for (std::size_t k : active) p[k] = centroid[k] + t * (worst[k] - centroid[k]);
        return p;
    };

    sortSimplex();
    report.trace.push_back(f[0]);
    bool collapsed = false;
    while (report.evaluations < opts.maxEvaluations && f[0] > opts.targetObjective) {
        Point centroid{};
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t d = 0; d < kDim; ++d) centroid[d] += simplex[k][d] / n;
        }
        const Point& worst = simplex[n];
        const Point xr = along(centroid, worst, -1.0);
        const double fr = objective(xr);
        if (fr < f[0]) {
            const Point xe = along(centroid, worst, -2.0);
            const double fe = objective(xe);
            if (fe < fr) {
                simplex[n] = xe;
                f[n] = fe;
            } else {
                simplex[n] = xr;
                f[n] = fr;
            }
        } else if (fr < f[n - 1]) {
            simplex[n] = xr;
            f[n] = fr;
        } else {
            const bool outside = fr < f[n];
            const Point xc = along(centroid, worst, outside ? -0.5 : 0.5);
            const double fc = objective(xc);
            if (fc < (outside ? fr : f[n])) {
                simplex[n] = xc;
                f[n] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    for (std::size_t d : active) {
                        simplex[k][d] = simplex[0][d] + 0.5 * (simplex[k][d] - simplex[0][d]);
                    }
                    f[k] = objective(simplex[k]);
                }
            }
        }
        sortSimplex();
        report.trace.push_back(f[0]);

        double spread = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t d : active) spread = std::max(spread, std::abs(simplex[k][d] - simplex[0][d]));
        }
        if (spread < 1e-10) {
            collapsed = true;
            break;
        }
    }

    report.params = fromLogs(simplex[0], jumps);
    report.objective = evaluate(simplex[0], &report.relativeResiduals, &report.shift);
    report.converged = collapsed || report.objective <= opts.targetObjective;
    return report;
}

}  // namespace ssrjd
