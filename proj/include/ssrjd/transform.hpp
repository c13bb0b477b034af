#pragma once

// Transforms of the factor y used by the swaption decomposition:
//
//   psi(T, y0, rho)      = E[exp(-rho y_T - int_0^T y)]        = alpha_psi e^{-beta_psi y0}
//   Pi(T, y0, s, rho)    = E[exp(-rho y_T - int_0^T y) 1{y_T >= s}]
//   Psi(t, T, y, s, rho) = E_t[exp(-int_t^T y) (e^{-rho s} - e^{-rho y_T})^+]
//
// Pi is obtained by Fourier inversion: Pi = psi/2 - (1/pi) int_0^inf f(v)/v dv
// with f real and explicit in the constants of FourierTerms.

#include "ssrjd/model.hpp"
#include "ssrjd/quadrature.hpp"

#include <cstddef>

namespace ssrjd {

struct AlphaBeta {
    double alpha = 1.0;
    double beta = 0.0;
};

/// Coefficients of psi(T, y0, rho) for horizon T >= 0 and weight rho >= 0.
AlphaBeta alphaBetaPsi(const IntensityParams& p, double T, double rho);

/// Every constant of the explicit Fourier integrand at frequency v.
/// With `singularBranch` set (gamma at (h - kappa)/2 within the relative band,
/// or the jump-factor denominators vanishing) the jump factor is computed from
/// its continuous limit and D, G, H, J, K are NaN.
struct FourierTerms {
    double R, S, U, W;
    double E, F, xTilde, yTilde;
    double D, G, H, J, K, N;
    double delta, epsilon, phi;
    bool singularBranch;
};

FourierTerms fourierTerms(const IntensityParams& p, double T, double rho, double v);

/// Below this frequency the integrand is replaced by its value at the cutoff.
inline constexpr double kFourierCutoff = 1e-8;

/// e^{U y0}[S cos(W y0 + v s) + R sin(W y0 + v s)] / v with the constants
/// precomputed once per (T, rho). Evaluation uses the equivalent single-phase
/// form |.| sin(arg) which needs one exponential and one sine.
class FourierIntegrand {
public:
    FourierIntegrand(const IntensityParams& p, double T, double rho, double sigma, double y0);

    double operator()(double v) const;
    /// Same value assembled literally from fourierTerms (slow; for checks).
    double fromTerms(double v) const;

    /// Smallest J seen so far (the two-argument angle assumes J > 0).
    double minJ() const noexcept { return minJ_; }
    bool singular() const noexcept { return singular_; }

private:
    void polar(double v, double& logAmp, double& phase) const;

    IntensityParams p_;
    double T_, rho_, sigma_, y0_;
    double h_, growth_, expHT_, base0_, halfExponent_, prefactor_;
    double delta0_, epsilon0_, phi0_;
    double D_, q_, z_, g0_, jDen0_, jNum0_, jNumV2_, kCoef_;
    bool singular_;
    mutable double minJ_;
};

/// fourierIntegrand(p, T, rho, sigma, y0, v) for v >= 0 (argument error otherwise).
double fourierIntegrand(const IntensityParams& p, double T, double rho, double sigma, double y0,
                        double v);

struct FourierOptions {
    double truncation = 1e6;
    double tolerance = 1e-9;
    std::size_t maxEvaluations = 1'000'000;
};

struct PiResult {
    double value = 0.0;
    double leading = 0.0;   // alpha_psi e^{-beta_psi y0}
    double integral = 0.0;  // int_0^N f(v)/v dv (plus tail when sigma = 0)
    QuadratureResult quadrature;
    double minJ = 0.0;
};

/// Pi with diagnostics; never throws on non-convergence (check quadrature.converged).
/// For sigma = 0 the integrand does not oscillate and decays only like a power
/// of v, so the tail beyond the truncation is added through v = N / s.
PiResult bigPiDetailed(const IntensityParams& p, double T, double y0, double sigma, double rho,
                       const FourierOptions& opts = {});

/// Pi(T, y0, sigma, rho). Throws NumericalError when the quadrature does not converge.
double bigPi(const IntensityParams& p, double T, double y0, double sigma, double rho,
             const FourierOptions& opts = {});

/// Psi(t, T, y_t, sigma, rho) = e^{-rho sigma} Pi(T - t, y_t, sigma, 0) - Pi(T - t, y_t, sigma, rho).
double bigPsiOption(const IntensityParams& p, double t, double T, double yt, double sigma,
                    double rho, const FourierOptions& opts = {});

}  // namespace ssrjd
