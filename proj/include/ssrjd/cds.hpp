#pragma once

// (Forward) credit default swap valuation from the protection buyer's side,
// unit notional. Time integrals use composite Simpson on every schedule period
// (and every curve/shift knot) separately.

#include "ssrjd/model.hpp"

namespace ssrjd {

struct LegOptions {
    /// Simpson subintervals per piece between consecutive payment dates/knots (even).
    int subintervalsPerPeriod = 8;
};

struct CdsLegBreakdown {
    double premiumLeg = 0.0;          // sum alpha_i D(t,T_i) S(t,T_i)
    double accrualOnDefault = 0.0;    // -int (u - T_{beta(u)-1}) D dS
    double annuity = 0.0;             // premiumLeg + accrualOnDefault
    double protectionIntegral = 0.0;  // int D dS over [T_a, T_b], <= 0
    double protectionLeg = 0.0;       // -lgd * protectionIntegral
    double spread = 0.0;              // running spread R the pv refers to
    double fairSpread = 0.0;
    double pv = 0.0;                  // -(R * annuity + lgd * protectionIntegral)
};

/// Risky annuity C_{a,b}(t) including accrual on default; t <= T_a.
double riskyAnnuity(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                    double t, double y, const LegOptions& opts = {});

/// int_{T_a}^{T_b} D(t,u) dS(t,u)/du du (nonpositive).
double protectionLegIntegral(const Model& m, const DiscountCurve& curve,
                             const PaymentSchedule& schedule, double t, double y,
                             const LegOptions& opts = {});

double cdsValue(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                double t, double y, double spread, double lossGivenDefault,
                const LegOptions& opts = {});

/// Spread making cdsValue zero. Throws NumericalError if the annuity is not positive.
double fairSpread(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                  double t, double y, double lossGivenDefault, const LegOptions& opts = {});

CdsLegBreakdown cdsBreakdown(const Model& m, const DiscountCurve& curve,
                             const PaymentSchedule& schedule, double t, double y, double spread,
                             double lossGivenDefault, const LegOptions& opts = {});

}  // namespace ssrjd
