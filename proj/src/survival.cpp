#include "ssrjd/survival.hpp"

#include "ssrjd/detail/jump_factor.hpp"
#include "ssrjd/errors.hpp"

#include <cmath>

namespace ssrjd {

namespace {

void checkTimes(double t, double T) {
    if (!(t <= T)) throw ArgumentError("survival: require t <= T");
}

// Quantities shared by B, xi, zeta and their maturity derivatives.
struct Kernel {
    double h;
    double tau;
    double growth;   // e^{h tau} - 1
    double denom;    // 2h + (kappa + h) growth
};

Kernel kernel(const IntensityParams& p, double t, double T) {
    checkTimes(t, T);
    const double h = p.h();
    const double tau = T - t;
    const double growth = std::expm1(h * tau);
    return {h, tau, growth, 2.0 * h + (p.kappa + h) * growth};
}

double logXi(const IntensityParams& p, const Kernel& k) {
    const double base = std::log(2.0 * k.h) + 0.5 * (k.h + p.kappa) * k.tau - std::log(k.denom);
    return p.fellerRatio() * base;
}

double logZeta(const IntensityParams& p, const Kernel& k) {
    if (p.alpha == 0.0 || k.tau == 0.0) return 0.0;
    if (detail::nearJumpSingularity(p)) return detail::jumpLogFactor(p, k.tau, 0.0);
    const double c = p.kappa + k.h + 2.0 * p.gamma;
    const double denom = 2.0 * k.h + c * k.growth;
    const double base = std::log(2.0 * k.h) + 0.5 * c * k.tau - std::log(denom);
    const double exponent =
        2.0 * p.alpha * p.gamma / (p.nu * p.nu - 2.0 * p.kappa * p.gamma - 2.0 * p.gamma * p.gamma);
    return exponent * base;
}

}  // namespace

double factorB(const IntensityParams& p, double t, double T) {
    const Kernel k = kernel(p, t, T);
    return 2.0 * k.growth / k.denom;
}

double factorBLimit(const IntensityParams& p) { return 2.0 / (p.kappa + p.h()); }

double factorXi(const IntensityParams& p, double t, double T) {
    return std::exp(logXi(p, kernel(p, t, T)));
}

double factorZeta(const IntensityParams& p, double t, double T) {
    return std::exp(logZeta(p, kernel(p, t, T)));
}

SurvivalFactors survivalFactors(const IntensityParams& p, double t, double T) {
    const Kernel k = kernel(p, t, T);
    SurvivalFactors f;
    f.B = 2.0 * k.growth / k.denom;
    f.xi = std::exp(logXi(p, k));
    f.zeta = p.alpha == 0.0 ? 1.0 : std::exp(logZeta(p, k));
    f.A = f.xi * f.zeta;
    return f;
}

double survival(const Model& m, double t, double T, double y) {
    return survivalWithDerivative(m, t, T, y).value;
}

double survivalMaturityDerivative(const Model& m, double t, double T, double y) {
    return survivalWithDerivative(m, t, T, y).derivative;
}

SurvivalPoint survivalWithDerivative(const Model& m, double t, double T, double y) {
    return survivalWithDerivative(m, t, T, y, m.shift.value(T));
}

SurvivalPoint survivalWithDerivative(const Model& m, double t, double T, double y,
                                     double shiftAtT) {
    if (!(y >= 0.0)) throw ArgumentError("survival: factor level y must be nonnegative");
    const IntensityParams& p = m.params;
    const Kernel k = kernel(p, t, T);

    const double B = 2.0 * k.growth / k.denom;
    const double logA = logXi(p, k) + logZeta(p, k);
    const double value = std::exp(logA - m.shift.integral(t, T) - B * y);

    const double dLogXi = -2.0 * p.kappa * p.mu * k.growth / k.denom;
    const double dB = 4.0 * k.h * k.h * (k.growth + 1.0) / (k.denom * k.denom);
    double dLogZeta = 0.0;
    if (p.alpha != 0.0) {
        dLogZeta = -2.0 * p.alpha * p.gamma * k.growth /
                   (2.0 * k.h + (p.kappa + k.h + 2.0 * p.gamma) * k.growth);
    }
    const double rate = dLogXi - y * dB + dLogZeta - shiftAtT;
    return {value, value * rate};
}

}  // namespace ssrjd
