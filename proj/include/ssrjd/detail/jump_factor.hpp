#pragma once

// Cancellation-free logarithm of the jump contribution to the exponential-affine
// transform E[exp(-rho y_T - int_0^T y ds)]. It solves
//   log J(T) = -alpha * int_0^T gamma b(s) / (1 + gamma b(s)) ds
// in closed form, where b is the Riccati coefficient with b(0) = rho. The closed
// form is rearranged so that it stays regular when gamma approaches (h - kappa)/2,
// where the textbook power form degenerates into 1^inf.

#include "ssrjd/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <type_traits>

namespace ssrjd::detail {

template <class Num>
Num log1pOverX(Num x) {
    if (std::abs(x) < 1e-3) {
        return 1.0 - x * (1.0 / 2.0 - x * (1.0 / 3.0 - x * (1.0 / 4.0 - x * (1.0 / 5.0 - x / 6.0))));
    }
    if constexpr (std::is_floating_point_v<Num>) {
        return std::log1p(x) / x;
    } else {
        return std::log(1.0 + x) / x;
    }
}

/// log of the jump factor for horizon `tau` and (possibly complex) weight `rho`.
template <class Num>
Num jumpLogFactor(const IntensityParams& p, double tau, Num rho) {
    if (p.alpha == 0.0 || tau == 0.0) return Num(0.0);
    const double h = p.h();
    const double kappa = p.kappa;
    const double nu2 = p.nu * p.nu;
    const double gamma = p.gamma;

    const Num P = h + kappa + rho * nu2;
    const Num M = P + gamma * (2.0 + rho * (h - kappa));
    const Num a0 = 2.0 * h - P;
    const Num a1 = P;
    const Num sum = 2.0 * h * (1.0 + rho * gamma);  // c0 + c1
    const Num c0 = sum - M;
    const Num c1 = M;

    const double decay = std::expm1(-h * tau);
    const Num w = decay / sum;
    const Num x = c0 * w;
    const Num l1 = log1pOverX(x);
    // log((c0 + c1 e^{h tau}) / (c0 + c1)) = h tau + log1p(c0 w)
    const Num logRatio = h * tau + x * l1;
    const Num integral = -(a0 * w / h) * l1 + (a1 / (c1 * h)) * logRatio;
    return -p.alpha * (tau - integral);
}

/// True when nu^2 - 2 kappa gamma - 2 gamma^2 is small enough (relative) that the
/// power form of the jump factor loses accuracy to cancellation.
inline bool nearJumpSingularity(const IntensityParams& p, double relBand = 1e-6) {
    const double nu2 = p.nu * p.nu;
    const double other = 2.0 * p.kappa * p.gamma + 2.0 * p.gamma * p.gamma;
    return std::abs(nu2 - other) < relBand * std::max(nu2, other);
}

}  // namespace ssrjd::detail
