#pragma once

// Closed-form survival probability S(t,T;y) = A(t,T) exp(-int_t^T psi - B(t,T) y)
// and its maturity derivative.

#include "ssrjd/model.hpp"

namespace ssrjd {

struct SurvivalFactors {
    double A = 1.0;
    double B = 0.0;
    double xi = 1.0;
    double zeta = 1.0;
};

double factorB(const IntensityParams& p, double t, double T);
double factorXi(const IntensityParams& p, double t, double T);
/// Jump factor. Equals 1 when alpha = 0. Near gamma = (h - kappa)/2 the power
/// form is replaced by its continuous limit.
double factorZeta(const IntensityParams& p, double t, double T);
SurvivalFactors survivalFactors(const IntensityParams& p, double t, double T);

/// Limit of B(t,T) as T - t -> infinity: 2 / (kappa + h).
double factorBLimit(const IntensityParams& p);

double survival(const Model& m, double t, double T, double y);

/// d/dT S(t,T;y). psi(T) is taken from the right at knots.
double survivalMaturityDerivative(const Model& m, double t, double T, double y);

struct SurvivalPoint {
    double value = 1.0;
    double derivative = 0.0;
};

/// S and dS/dT in one pass (shares the exponentials).
SurvivalPoint survivalWithDerivative(const Model& m, double t, double T, double y);

/// Same, with psi(T) supplied by the caller (integrators pass the left limit
/// at the right edge of a piece).
SurvivalPoint survivalWithDerivative(const Model& m, double t, double T, double y,
                                     double shiftAtT);

}  // namespace ssrjd
