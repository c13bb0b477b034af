#pragma once

// Payer default swaption by decomposition into options on the exponential-affine
// factor: the exercise boundary y* splits the payoff into Psi-options, one per
// outer quadrature node plus one for the point mass of h at T_b.

#include "ssrjd/cds.hpp"
#include "ssrjd/model.hpp"
#include "ssrjd/transform.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace ssrjd {

struct SwaptionOptions {
    /// Outer Simpson subintervals per piece between payment dates (even).
    int outerSubintervalsPerPeriod = 2;
    FourierOptions fourier;
    /// Used for the forward CDS in the deep-in-the-money branch.
    LegOptions legs;
};

struct HWeight {
    double continuousPart = 0.0;  // D(T_a,u)[L r_u + K(1 - (u - T_{beta(u)-1}) r_u)]
    double pointMassAtTb = 0.0;   // L D(T_a,T_b), carried outside every quadrature
};

/// h(u) for T_a <= u <= T_b. At an interior payment date the accrual uses the
/// period that just ended.
HWeight hWeight(const DiscountCurve& curve, const PaymentSchedule& schedule, double strike,
                double lossGivenDefault, double u);

/// int [L D dS(T_a,u;0) + K S(T_a,u;0) D (1 - acc r)] du. Nonnegative means the
/// decomposition applies; negative means the option is exercised almost surely.
double gateIntegral(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                    double strike, double lossGivenDefault, const SwaptionOptions& opts = {});

/// The y* >= 0 with int h(u) S(T_a,u;y*) du = L. Throws BranchError when the gate
/// integral is negative, NumericalError if no bracket is found.
double solveYStar(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                  double strike, double lossGivenDefault, const SwaptionOptions& opts = {});

enum class SwaptionBranch { Decomposed, DeepInTheMoney };

std::string toString(SwaptionBranch b);

struct DecompositionReport {
    std::optional<double> yStar;
    SwaptionBranch branch = SwaptionBranch::Decomposed;
    double gateIntegral = 0.0;
    double price = 0.0;
    std::size_t outerNodes = 0;
    /// Largest Fourier quadrature error bound among the Pi evaluations (price units
    /// before weighting) and the total integrand evaluations.
    double maxFourierError = 0.0;
    std::size_t fourierEvaluations = 0;
};

/// Price at time t <= T_a given survival to t and y_t.
DecompositionReport payerSwaption(const Model& m, const DiscountCurve& curve,
                                  const SwaptionSpec& spec, double t, double yt,
                                  const SwaptionOptions& opts = {});

double payerSwaptionPrice(const Model& m, const DiscountCurve& curve, const SwaptionSpec& spec,
                          double t, double yt, const SwaptionOptions& opts = {});

}  // namespace ssrjd
