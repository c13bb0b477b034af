#include "ssrjd/transform.hpp"

#include "ssrjd/detail/jump_factor.hpp"
#include "ssrjd/errors.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace ssrjd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void checkHorizon(double T, double rho) {
    if (!(T >= 0.0)) throw ArgumentError("transform: horizon must be nonnegative");
    if (!(rho >= 0.0)) throw ArgumentError("transform: rho must be nonnegative");
}

// Denominator z^2 + v^2 q^2 of G and H, and the jump exponent denominator,
// both vanish at the singular gamma; below these the limit form is used.
bool jumpNeedsLimit(const IntensityParams& p, double z, double q, double v) {
    if (detail::nearJumpSingularity(p)) return true;
    const double scale = p.kappa * p.kappa + p.nu * p.nu;
    return z * z + v * v * q * q < 1e-16 * scale * scale;
}

// Real jump factor of alpha_psi by the power form.
double logJumpPower(const IntensityParams& p, double T, double rho) {
    const double h = p.h();
    const double k = p.kappa;
    const double g = p.gamma;
    const double nu2 = p.nu * p.nu;
    const double e1 = std::expm1(h * T);
    const double z = h - k - 2.0 * g - rho * (nu2 - g * (h + k));
    const double exponentRate =
        (h * h - (k + 2.0 * g) * (k + 2.0 * g)) * (1.0 - 0.5 * rho * (h + k)) / (2.0 * z);
    const double num = 2.0 * h * (1.0 + rho * g);
    const double den = num + (h + k + rho * nu2 + g * (2.0 + rho * (h - k))) * e1;
    const double power = 2.0 * p.alpha * g / (nu2 - 2.0 * k * g - 2.0 * g * g);
    return power * (std::log(num) + exponentRate * T - std::log(den));
}

}  // namespace

AlphaBeta alphaBetaPsi(const IntensityParams& p, double T, double rho) {
    checkHorizon(T, rho);
    if (T == 0.0) return {1.0, rho};
    const double h = p.h();
    const double k = p.kappa;
    const double nu2 = p.nu * p.nu;
    const double e1 = std::expm1(h * T);
    const double base = 2.0 * h + (h + k + rho * nu2) * e1;

    AlphaBeta out;
    out.beta = (2.0 * rho * h + (2.0 + rho * (h - k)) * e1) / base;
    double logAlpha = p.fellerRatio() * (std::log(2.0 * h) + 0.5 * (k + h) * T - std::log(base));
    if (p.alpha != 0.0) {
        const double q = nu2 - p.gamma * (h + k);
        const double z = h - k - 2.0 * p.gamma - rho * q;
        logAlpha += jumpNeedsLimit(p, z, q, 0.0) ? detail::jumpLogFactor(p, T, rho)
                                                 : logJumpPower(p, T, rho);
    }
    out.alpha = std::exp(logAlpha);
    return out;
}

FourierTerms fourierTerms(const IntensityParams& p, double T, double rho, double v) {
    checkHorizon(T, rho);
    if (!(v >= 0.0)) throw ArgumentError("transform: frequency must be nonnegative");
    v = std::max(v, kFourierCutoff);

    const double h = p.h();
    const double k = p.kappa;
    const double g = p.gamma;
    const double nu2 = p.nu * p.nu;
    const double v2 = v * v;
    const double e1 = std::expm1(h * T);
    const double expHT = e1 + 1.0;
    const double base0 = 2.0 * h + (h + k + rho * nu2) * e1;

    FourierTerms t{};
    t.N = base0 * base0 + v2 * nu2 * nu2 * e1 * e1;
    t.delta = 2.0 * (h - k) - 4.0 * nu2 * rho + rho * rho * nu2 * (h + k) + v2 * nu2 * (h + k);
    t.epsilon = 4.0 * k - 4.0 * k * k * rho - 2.0 * k * rho * rho * nu2 - 2.0 * v2 * nu2 * k;
    t.phi = -2.0 * (h + k) - 4.0 * nu2 * rho - rho * rho * nu2 * (h - k) - v2 * nu2 * (h - k);
    t.U = (t.delta + t.epsilon * expHT + t.phi * expHT * expHT) / t.N;
    t.W = -4.0 * v * h * h * expHT / t.N;

    const double pref = 2.0 * h * std::exp(0.5 * (h + k) * T);
    t.xTilde = pref * base0 / t.N;
    t.yTilde = -pref * v * nu2 * e1 / t.N;
    const double pw = k * p.mu / nu2;
    const double modD = std::pow(t.xTilde * t.xTilde + t.yTilde * t.yTilde, pw);
    const double argD = 2.0 * pw * std::atan2(t.yTilde, t.xTilde);
    t.E = modD * std::cos(argD);
    t.F = modD * std::sin(argD);

    double modJ = 1.0;
    double argJ = 0.0;
    const double q = nu2 - g * (h + k);
    const double z = h - k - 2.0 * g - rho * q;
    t.singularBranch = p.alpha != 0.0 && jumpNeedsLimit(p, z, q, v);
    if (p.alpha == 0.0) {
        t.D = 0.0;
        t.G = 0.0;
        t.H = 0.0;
        t.J = 1.0;
        t.K = 0.0;
    } else if (t.singularBranch) {
        const std::complex<double> L = detail::jumpLogFactor(p, T, std::complex<double>(rho, v));
        modJ = std::exp(L.real());
        argJ = L.imag();
        t.D = t.G = t.H = t.J = t.K = kNaN;
    } else {
        const double a = p.alpha;
        t.D = -2.0 * g * a / (nu2 - 2.0 * g * k - 2.0 * g * g);
        const double den = z * z + v2 * q * q;
        t.G = a * g * T * ((2.0 - rho * (h + k)) * z + v2 * (h + k) * q) / den;
        t.H = a * g * T * v * ((2.0 - rho * (h + k)) * q - (h + k) * z) / den;
        const double dd = 2.0 * h * (1.0 + rho * g) * (1.0 + rho * g) + 2.0 * h * v2 * g * g;
        t.J = 1.0 + e1 *
                        ((h + k + 2.0 * g) * (1.0 + rho * g) +
                         (nu2 + g * (h - k)) * (rho * (rho * g + 1.0) + v2 * g)) /
                        dd;
        t.K = -e1 * v * (2.0 * g * k + 2.0 * g * g - nu2) / dd;
        modJ = std::pow(t.J * t.J + t.K * t.K, 0.5 * t.D) * std::exp(t.G);
        argJ = t.H + t.D * std::atan2(t.K, t.J);
    }
    t.R = modJ * (t.E * std::cos(argJ) - t.F * std::sin(argJ));
    t.S = modJ * (t.F * std::cos(argJ) + t.E * std::sin(argJ));
    return t;
}

FourierIntegrand::FourierIntegrand(const IntensityParams& p, double T, double rho, double sigma,
                                   double y0)
    : p_(p), T_(T), rho_(rho), sigma_(sigma), y0_(y0), minJ_(std::numeric_limits<double>::infinity()) {
    checkHorizon(T, rho);
    if (!(y0 >= 0.0)) throw ArgumentError("transform: y0 must be nonnegative");
    if (!(sigma >= 0.0)) throw ArgumentError("transform: threshold must be nonnegative");

    const double h = p.h();
    const double k = p.kappa;
    const double g = p.gamma;
    const double nu2 = p.nu * p.nu;
    h_ = h;
    growth_ = std::expm1(h * T);
    expHT_ = growth_ + 1.0;
    base0_ = 2.0 * h + (h + k + rho * nu2) * growth_;
    halfExponent_ = k * p.mu / nu2;
    prefactor_ = 2.0 * h * std::exp(0.5 * (h + k) * T);
    delta0_ = 2.0 * (h - k) - 4.0 * nu2 * rho + rho * rho * nu2 * (h + k);
    epsilon0_ = 4.0 * k - 4.0 * k * k * rho - 2.0 * k * rho * rho * nu2;
    phi0_ = -2.0 * (h + k) - 4.0 * nu2 * rho - rho * rho * nu2 * (h - k);

    q_ = nu2 - g * (h + k);
    z_ = h - k - 2.0 * g - rho * q_;
    g0_ = 2.0 - rho * (h + k);
    singular_ = p.alpha != 0.0 && detail::nearJumpSingularity(p);
    D_ = singular_ || p.alpha == 0.0 ? 0.0 : -2.0 * g * p.alpha / (nu2 - 2.0 * g * k - 2.0 * g * g);
    jDen0_ = 2.0 * h * (1.0 + rho * g) * (1.0 + rho * g);
    jNum0_ = (h + k + 2.0 * g) * (1.0 + rho * g) + (nu2 + g * (h - k)) * rho * (rho * g + 1.0);
    jNumV2_ = (nu2 + g * (h - k)) * g;
    kCoef_ = -growth_ * (2.0 * g * k + 2.0 * g * g - nu2);
}

double FourierIntegrand::operator()(double v) const {
    if (!(v >= 0.0)) throw ArgumentError("transform: frequency must be nonnegative");
    v = std::max(v, kFourierCutoff);
    double logAmp;
    double phase;
    polar(v, logAmp, phase);
    return std::exp(logAmp) * std::sin(phase) / v;
}

void FourierIntegrand::polar(double v, double& logAmp, double& phase) const {
    const IntensityParams& p = p_;
    const double v2 = v * v;
    const double nu2 = p.nu * p.nu;
    const double nu4e2 = nu2 * nu2 * growth_ * growth_;

    const double N = base0_ * base0_ + v2 * nu4e2;
    const double delta = delta0_ + v2 * nu2 * (h_ + p.kappa);
    const double epsilon = epsilon0_ - 2.0 * v2 * nu2 * p.kappa;
    const double phi = phi0_ - v2 * nu2 * (h_ - p.kappa);
    const double U = (delta + expHT_ * (epsilon + phi * expHT_)) / N;
    const double W = -4.0 * v * h_ * h_ * expHT_ / N;

    const double xt = prefactor_ * base0_ / N;
    const double yt = -prefactor_ * v * nu2 * growth_ / N;
    double logMod = halfExponent_ * std::log(xt * xt + yt * yt);
    double arg = 2.0 * halfExponent_ * std::atan2(yt, xt);

    if (p.alpha != 0.0) {
        const double den = z_ * z_ + v2 * q_ * q_;
        if (singular_ || jumpNeedsLimit(p, z_, q_, v)) {
            const std::complex<double> L =
                detail::jumpLogFactor(p, T_, std::complex<double>(rho_, v));
            logMod += L.real();
            arg += L.imag();
        } else {
            const double a = p.alpha * p.gamma * T_;
            const double hk = h_ + p.kappa;
            const double G = a * (g0_ * z_ + v2 * hk * q_) / den;
            const double H = a * v * (g0_ * q_ - hk * z_) / den;
            const double dd = jDen0_ + 2.0 * h_ * v2 * p.gamma * p.gamma;
            const double J = 1.0 + growth_ * (jNum0_ + jNumV2_ * v2) / dd;
            const double K = kCoef_ * v / dd;
            if (J < minJ_) minJ_ = J;
            logMod += 0.5 * D_ * std::log(J * J + K * K) + G;
            arg += H + D_ * std::atan2(K, J);
        }
    }
    logAmp = U * y0_ + logMod;
    phase = arg + W * y0_ + v * sigma_;
}

double FourierIntegrand::fromTerms(double v) const {
    const FourierTerms t = fourierTerms(p_, T_, rho_, v);
    v = std::max(v, kFourierCutoff);
    const double phase = t.W * y0_ + v * sigma_;
    return std::exp(t.U * y0_) * (t.S * std::cos(phase) + t.R * std::sin(phase)) / v;
}

double fourierIntegrand(const IntensityParams& p, double T, double rho, double sigma, double y0,
                        double v) {
    return FourierIntegrand(p, T, rho, sigma, y0)(v);
}

PiResult bigPiDetailed(const IntensityParams& p, double T, double y0, double sigma, double rho,
                       const FourierOptions& opts) {
    checkHorizon(T, rho);
    if (!(y0 >= 0.0)) throw ArgumentError("Pi: y0 must be nonnegative");
    if (!(sigma >= 0.0)) throw ArgumentError("Pi: threshold must be nonnegative");
    if (!(opts.truncation > 0.0) || !(opts.tolerance > 0.0)) {
        throw ArgumentError("Pi: truncation and tolerance must be positive");
    }

    PiResult out;
    if (T == 0.0) {
        out.leading = std::exp(-rho * y0);
        out.value = y0 >= sigma ? out.leading : 0.0;
        out.quadrature.converged = true;
        out.minJ = 1.0;
        return out;
    }

    const AlphaBeta ab = alphaBetaPsi(p, T, rho);
    out.leading = ab.alpha * std::exp(-ab.beta * y0);

    const FourierIntegrand f(p, T, rho, sigma, y0);
    const double N = opts.truncation;
    const double tol = sigma == 0.0 ? 0.5 * opts.tolerance : opts.tolerance;
    out.quadrature = adaptiveLobatto(f, 0.0, N, tol, opts.maxEvaluations);

    if (sigma == 0.0) {
        auto tail = [&f, N](double s) {
            if (s < 1e-300) return 0.0;
            const double v = N / s;
            if (!std::isfinite(v)) return 0.0;
            return f(v) * N / (s * s);
        };
        const QuadratureResult t = adaptiveLobatto(tail, 0.0, 1.0, tol, opts.maxEvaluations);
        out.quadrature.value += t.value;
        out.quadrature.errorEstimate += t.errorEstimate;
        out.quadrature.evaluations += t.evaluations;
        out.quadrature.converged = out.quadrature.converged && t.converged;
    }

    out.integral = out.quadrature.value;
    out.value = 0.5 * out.leading - out.integral / std::numbers::pi;
    out.minJ = f.minJ();
    return out;
}

double bigPi(const IntensityParams& p, double T, double y0, double sigma, double rho,
             const FourierOptions& opts) {
    const PiResult r = bigPiDetailed(p, T, y0, sigma, rho, opts);
    if (!r.quadrature.converged) {
        throw NumericalError("Fourier inversion did not reach the requested tolerance", r.value,
                             r.quadrature.errorEstimate / std::numbers::pi);
    }
    return r.value;
}

double bigPsiOption(const IntensityParams& p, double t, double T, double yt, double sigma,
                    double rho, const FourierOptions& opts) {
    if (!(t <= T)) throw ArgumentError("Psi: require t <= T");
    const double tau = T - t;
    const double atZero = bigPi(p, tau, yt, sigma, 0.0, opts);
    const double atRho = bigPi(p, tau, yt, sigma, rho, opts);
    return std::exp(-rho * sigma) * atZero - atRho;
}

}  // namespace ssrjd
