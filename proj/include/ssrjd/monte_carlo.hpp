#pragma once

// Monte Carlo oracle for the factor y: Euler full truncation with compound
// Poisson jumps. The swaption estimator simulates only up to T_a and values
// the remaining CDS in closed form from y_{T_a}.

#include "ssrjd/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ssrjd {

struct McConfig {
    std::size_t paths = 200'000;
    int stepsPerYear = 250;
    std::uint64_t seed = 20080101;
    /// Simpson subintervals per period for the inner closed-form CDS value.
    int innerSubintervalsPerPeriod = 8;
};

struct McEstimate {
    double mean = 0.0;
    double standardError = 0.0;
    std::size_t paths = 0;
};

struct PathSample {
    double terminal = 0.0;  // y_T
    double integral = 0.0;  // int_0^T y ds (trapezoid on the truncated path)
};

/// One sample per path, starting from p.y0 at time 0. Path i depends only on
/// (seed, i), so any prefix of paths is reproducible on its own.
std::vector<PathSample> simulatePaths(const IntensityParams& p, double horizon,
                                      const McConfig& cfg);

/// Mean and standard error with compensated sums.
McEstimate summarize(std::span<const double> values);

/// E[y_T].
McEstimate mcMeanFactor(const IntensityParams& p, double horizon, const McConfig& cfg);
/// E[exp(-int_0^T y)] (survival with psi = 0).
McEstimate mcSurvival(const IntensityParams& p, double horizon, const McConfig& cfg);
/// E[exp(-rho y_T - int_0^T y) 1{y_T >= sigma}].
McEstimate mcTruncatedTransform(const IntensityParams& p, double horizon, double sigma, double rho,
                                const McConfig& cfg);

/// Payer swaption prices for several strikes from one set of paths started at
/// (t, yt). `spec` supplies the schedule and loss given default.
std::vector<McEstimate> mcSwaptionPrices(const Model& m, const DiscountCurve& curve,
                                         const SwaptionSpec& spec, std::span<const double> strikes,
                                         double t, double yt, const McConfig& cfg);

McEstimate mcSwaptionPrice(const Model& m, const DiscountCurve& curve, const SwaptionSpec& spec,
                           double t, double yt, const McConfig& cfg);

}  // namespace ssrjd
