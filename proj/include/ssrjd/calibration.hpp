#pragma once

// Shift bootstrap to a CDS term structure and a simplex fit of the factor
// parameters to swaption prices.

#include "ssrjd/cds.hpp"
#include "ssrjd/model.hpp"
#include "ssrjd/swaption.hpp"

#include <cstddef>
#include <vector>

namespace ssrjd {

struct CdsQuote {
    double maturity = 0.0;  // years from 0; CDS runs quarterly from 0
    double spread = 0.0;    // decimal per year
};

struct BootstrapOptions {
    double lossGivenDefault = 0.6;
    int frequency = 4;
    LegOptions legs;
};

/// Piecewise-constant psi with knots at the quote maturities so that the spot
/// CDS to each maturity reprices its quote. Levels are solved one interval at a
/// time; a quote that needs psi < 0 raises CalibrationError for that interval.
ShiftFunction bootstrapShift(const IntensityParams& params, const DiscountCurve& curve,
                             const std::vector<CdsQuote>& quotes,
                             const BootstrapOptions& opts = {});

struct LenientBootstrap {
    ShiftFunction shift;
    std::vector<double> spreadErrors;  // model - quote, nonzero only where psi hit 0
};

/// As bootstrapShift, but a level that would be negative is set to 0 and the
/// leftover spread error is reported instead of thrown.
LenientBootstrap bootstrapShiftClamped(const IntensityParams& params, const DiscountCurve& curve,
                                       const std::vector<CdsQuote>& quotes,
                                       const BootstrapOptions& opts = {});

struct SwaptionQuote {
    SwaptionSpec spec;
    double price = 0.0;
};

struct FitOptions {
    std::size_t maxEvaluations = 500;
    /// Stop once the objective falls below this value.
    double targetObjective = 1e-12;
    /// Strict adds a penalty for 2 kappa mu <= nu^2.
    FellerMode feller = FellerMode::Lenient;
    /// Initial simplex step in log-parameters.
    double initialStep = 0.1;
    /// Weight of squared relative CDS spread misfit when psi is clamped at 0.
    double spreadPenalty = 1.0;
    BootstrapOptions bootstrap;
    /// Cheaper Fourier settings than the pricing default; the relative price
    /// error stays below 1e-5 for the parameter sets tried.
    SwaptionOptions pricing{2, FourierOptions{1e4, 1e-7, 1'000'000}, LegOptions{}};
};

struct FitReport {
    IntensityParams params;
    ShiftFunction shift;
    double objective = 0.0;
    std::vector<double> trace;              // best objective after each simplex step
    std::vector<double> relativeResiduals;  // (model - quote) / quote per swaption
    std::size_t evaluations = 0;
    /// Target objective reached or simplex collapsed before the budget ran out.
    bool converged = false;
};

/// Minimises the sum of squared relative swaption price errors over
/// (y0, kappa, mu, nu, alpha, gamma), re-bootstrapping psi at each trial point
/// (no CDS quotes means psi = 0). Parameters are searched in logs, so they stay
/// positive; alpha = 0 in `initial` keeps the jump part switched off.
FitReport fitParams(const IntensityParams& initial, const DiscountCurve& curve,
                    const std::vector<CdsQuote>& cdsQuotes,
                    const std::vector<SwaptionQuote>& swaptionQuotes,
                    const FitOptions& opts = {});

}  // namespace ssrjd
