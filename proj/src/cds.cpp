#include "ssrjd/cds.hpp"

#include "ssrjd/detail/time_grid.hpp"
#include "ssrjd/errors.hpp"
#include "ssrjd/quadrature.hpp"
#include "ssrjd/survival.hpp"

#include <cmath>

namespace ssrjd {

namespace {

struct LegIntegrals {
    double premium = 0.0;
    double accrual = 0.0;     // int (u - T_{beta(u)-1}) D dS
    double protection = 0.0;  // int D dS
};

LegIntegrals integrateLegs(const Model& m, const DiscountCurve& curve,
                           const PaymentSchedule& schedule, double t, double y,
                           const LegOptions& opts) {
    if (!(t <= schedule.start())) {
        throw ArgumentError("CDS valuation time must not exceed the protection start");
    }
    if (!(y >= 0.0)) throw ArgumentError("CDS: factor level y must be nonnegative");

    LegIntegrals out;
    CompensatedSum premium;
    for (std::size_t i = 1; i <= schedule.periods(); ++i) {
        const double Ti = schedule.dates()[i];
        premium.add(schedule.accrual(i) * curve.discount(t, Ti) * survival(m, t, Ti, y));
    }
    out.premium = premium.value();

    CompensatedSum accrual;
    CompensatedSum protection;
    for (const detail::GridPiece& piece : detail::schedulePieces(schedule, curve, m.shift)) {
        const detail::PieceRule rule = detail::pieceRule(piece, opts.subintervalsPerPeriod);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double u = rule.nodes[j];
            const double dS = survivalWithDerivative(m, t, u, y, piece.shift).derivative;
            const double weighted = rule.weights[j] * curve.discount(t, u) * dS;
            protection.add(weighted);
            accrual.add((u - piece.accrualStart) * weighted);
        }
    }
    out.accrual = accrual.value();
    out.protection = protection.value();
    return out;
}

}  // namespace

double riskyAnnuity(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                    double t, double y, const LegOptions& opts) {
    const LegIntegrals legs = integrateLegs(m, curve, schedule, t, y, opts);
    return legs.premium - legs.accrual;
}

double protectionLegIntegral(const Model& m, const DiscountCurve& curve,
                             const PaymentSchedule& schedule, double t, double y,
                             const LegOptions& opts) {
    return integrateLegs(m, curve, schedule, t, y, opts).protection;
}

double cdsValue(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                double t, double y, double spread, double lossGivenDefault,
                const LegOptions& opts) {
    return cdsBreakdown(m, curve, schedule, t, y, spread, lossGivenDefault, opts).pv;
}

double fairSpread(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                  double t, double y, double lossGivenDefault, const LegOptions& opts) {
    return cdsBreakdown(m, curve, schedule, t, y, 0.0, lossGivenDefault, opts).fairSpread;
}

CdsLegBreakdown cdsBreakdown(const Model& m, const DiscountCurve& curve,
                             const PaymentSchedule& schedule, double t, double y, double spread,
                             double lossGivenDefault, const LegOptions& opts) {
    const LegIntegrals legs = integrateLegs(m, curve, schedule, t, y, opts);
    CdsLegBreakdown b;
    b.premiumLeg = legs.premium;
    b.accrualOnDefault = -legs.accrual;
    b.annuity = legs.premium - legs.accrual;
    b.protectionIntegral = legs.protection;
    b.protectionLeg = -lossGivenDefault * legs.protection;
    b.spread = spread;
    if (!(b.annuity > 0.0)) {
        throw NumericalError("risky annuity is not positive", b.annuity, 0.0);
    }
    b.fairSpread = b.protectionLeg / b.annuity;
    b.pv = -(spread * b.annuity + lossGivenDefault * legs.protection);
    return b;
}

}  // namespace ssrjd
