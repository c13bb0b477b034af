#include "ssrjd/swaption.hpp"

#include "ssrjd/detail/exercise.hpp"
#include "ssrjd/detail/time_grid.hpp"
#include "ssrjd/errors.hpp"
#include "ssrjd/quadrature.hpp"
#include "ssrjd/survival.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace ssrjd {

namespace detail {

ExerciseBoundary::ExerciseBoundary(const Model& m, const DiscountCurve& curve,
                                   const PaymentSchedule& schedule, double strike,
                                   double lossGivenDefault, int subintervalsPerPeriod)
    : lgd_(lossGivenDefault) {
    if (!(strike >= 0.0)) throw ArgumentError("strike must be nonnegative");
    if (!(lossGivenDefault > 0.0 && lossGivenDefault <= 1.0)) {
        throw ArgumentError("loss given default must lie in (0, 1]");
    }
    const double Ta = schedule.start();
    const double Tb = schedule.end();
    const IntensityParams& p = m.params;

    CompensatedSum gate;
    for (const GridPiece& piece : schedulePieces(schedule, curve, m.shift)) {
        const PieceRule rule = pieceRule(piece, subintervalsPerPeriod);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double u = rule.nodes[j];
            const double D = curve.discount(Ta, u);
            const double accrualFactor = 1.0 - (u - piece.accrualStart) * piece.rate;
            const double h = D * (lossGivenDefault * piece.rate + strike * accrualFactor);
            const SurvivalFactors f = survivalFactors(p, Ta, u);
            const double amplitude = f.A * std::exp(-m.shift.integral(Ta, u));
            nodes_.push_back({u, rule.weights[j] * h, amplitude, f.B});

            const SurvivalPoint s0 = survivalWithDerivative(m, Ta, u, 0.0, piece.shift);
            gate.add(rule.weights[j] * D *
                     (lossGivenDefault * s0.derivative + strike * s0.value * accrualFactor));
        }
    }
    gate_ = gate.value();

    pointMass_ = lossGivenDefault * curve.discount(Ta, Tb);
    const SurvivalFactors fb = survivalFactors(p, Ta, Tb);
    endAmplitude_ = fb.A * std::exp(-m.shift.integral(Ta, Tb));
    endSlope_ = fb.B;
}

double ExerciseBoundary::value(double y) const {
    CompensatedSum s;
    for (const Node& n : nodes_) s.add(n.weight * n.amplitude * std::exp(-n.slope * y));
    s.add(pointMass_ * endAmplitude_ * std::exp(-endSlope_ * y));
    return s.value();
}

}  // namespace detail

namespace {

void checkOuter(const SwaptionOptions& opts) {
    if (opts.outerSubintervalsPerPeriod <= 0 || opts.outerSubintervalsPerPeriod % 2 != 0) {
        throw ArgumentError("outer Simpson subintervals must be even and positive");
    }
}

double yStarFrom(const detail::ExerciseBoundary& eb) {
    if (eb.gate() < 0.0) {
        throw BranchError("gate integral is negative: take the forward CDS branch");
    }
    const double L = eb.lossGivenDefault();
    auto excess = [&eb, L](double y) { return eb.value(y) - L; };
    if (excess(0.0) <= 0.0) return 0.0;

    double hi = 1.0;
    int doublings = 0;
    while (excess(hi) > 0.0) {
        hi *= 2.0;
        if (++doublings > 60) {
            throw NumericalError("y* bracket expansion failed", hi, hi);
        }
    }
    std::uintmax_t maxIter = 200;
    const auto [a, b] = boost::math::tools::bisect(
        excess, 0.0, hi, [](double lo, double up) { return up - lo <= 1e-14; }, maxIter);
    // pick the endpoint with the smaller residual
    return std::abs(excess(a)) <= std::abs(excess(b)) ? a : b;
}

}  // namespace

HWeight hWeight(const DiscountCurve& curve, const PaymentSchedule& schedule, double strike,
                double lossGivenDefault, double u) {
    const double Ta = schedule.start();
    const double Tb = schedule.end();
    if (!(u >= Ta && u <= Tb)) throw ArgumentError("hWeight: u must lie in [T_a, T_b]");
    const double r = curve.rate(u);
    const double D = curve.discount(Ta, u);
    const double acc = u - schedule.accrualStartLeftLimit(u);
    return {D * (lossGivenDefault * r + strike * (1.0 - acc * r)),
            lossGivenDefault * curve.discount(Ta, Tb)};
}

double gateIntegral(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                    double strike, double lossGivenDefault, const SwaptionOptions& opts) {
    checkOuter(opts);
    return detail::ExerciseBoundary(m, curve, schedule, strike, lossGivenDefault,
                                    opts.outerSubintervalsPerPeriod)
        .gate();
}

double solveYStar(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                  double strike, double lossGivenDefault, const SwaptionOptions& opts) {
    checkOuter(opts);
    return yStarFrom(detail::ExerciseBoundary(m, curve, schedule, strike, lossGivenDefault,
                                              opts.outerSubintervalsPerPeriod));
}

std::string toString(SwaptionBranch b) {
    return b == SwaptionBranch::Decomposed ? "decomposed" : "deep-in-the-money";
}

DecompositionReport payerSwaption(const Model& m, const DiscountCurve& curve,
                                  const SwaptionSpec& spec, double t, double yt,
                                  const SwaptionOptions& opts) {
    spec.validate();
    checkOuter(opts);
    const PaymentSchedule& schedule = spec.schedule;
    const double Ta = schedule.start();
    if (!(t >= 0.0 && t <= Ta)) throw ArgumentError("swaption: require 0 <= t <= T_a");
    if (!(yt >= 0.0)) throw ArgumentError("swaption: factor level must be nonnegative");

    const detail::ExerciseBoundary eb(m, curve, schedule, spec.strike, spec.lossGivenDefault,
                                      opts.outerSubintervalsPerPeriod);
    DecompositionReport report;
    report.gateIntegral = eb.gate();
    report.outerNodes = eb.nodes().size();

    if (eb.gate() < 0.0) {
        report.branch = SwaptionBranch::DeepInTheMoney;
        report.price =
            cdsValue(m, curve, schedule, t, yt, spec.strike, spec.lossGivenDefault, opts.legs);
        return report;
    }

    const double ystar = yStarFrom(eb);
    report.yStar = ystar;
    report.branch = SwaptionBranch::Decomposed;

    const IntensityParams& p = m.params;
    const double tau = Ta - t;
    auto pi = [&](double rho) {
        const PiResult r = bigPiDetailed(p, tau, yt, ystar, rho, opts.fourier);
        report.fourierEvaluations += r.quadrature.evaluations;
        report.maxFourierError = std::max(report.maxFourierError, r.quadrature.errorEstimate);
        if (!r.quadrature.converged) {
            throw NumericalError("Fourier inversion did not converge (y* = " +
                                     std::to_string(ystar) +
                                     ", gate = " + std::to_string(eb.gate()) + ")",
                                 r.value, r.quadrature.errorEstimate);
        }
        return r.value;
    };

    const double piZero = pi(0.0);
    auto psi = [&](double rho) {
        if (rho == 0.0) return 0.0;
        return std::exp(-rho * ystar) * piZero - pi(rho);
    };

    CompensatedSum sum;
    double lastU = -1.0;
    double lastPsi = 0.0;
    for (const detail::ExerciseBoundary::Node& n : eb.nodes()) {
        if (n.u != lastU) {
            lastU = n.u;
            lastPsi = psi(n.slope);
        }
        sum.add(n.weight * n.amplitude * lastPsi);
    }
    const double endPsi = lastU == schedule.end() ? lastPsi : psi(eb.endSlope());
    sum.add(eb.pointMass() * eb.endAmplitude() * endPsi);

    const double outer = curve.discount(t, Ta) * std::exp(-m.shift.integral(t, Ta));
    report.price = std::max(outer * sum.value(), 0.0);
    return report;
}

double payerSwaptionPrice(const Model& m, const DiscountCurve& curve, const SwaptionSpec& spec,
                          double t, double yt, const SwaptionOptions& opts) {
    return payerSwaption(m, curve, spec, t, yt, opts).price;
}

}  // namespace ssrjd
