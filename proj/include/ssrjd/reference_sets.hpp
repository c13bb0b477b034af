#pragma once

// Parameter sets used by the reproduction commands and the acceptance suite.

#include "ssrjd/model.hpp"

#include <array>
#include <string_view>

namespace ssrjd::reference {

/// Truncation study of the Fourier integral: horizon 1, rho = B(0,3), sigma = 0.0062.
inline constexpr IntensityParams kTruncationStudy{0.005, 0.196, 0.065, 0.1594, 0.5, 0.025};
inline constexpr double kTruncationHorizon = 1.0;
inline constexpr double kTruncationRhoMaturity = 3.0;
inline constexpr double kTruncationSigma = 0.0062;
inline constexpr std::array<double, 6> kTruncationLevels{1e2, 1e3, 1e4, 1e5, 1e6, 1e7};
/// Reference ladder for the truncation study.
inline constexpr std::array<double, 6> kTruncationLadder{-0.75859, -0.76983, -0.77173,
                                                         -0.77178, -0.77178, -0.77178};

/// Strike study: T_a = 1, T_b = 5, quarterly, r = 0.03, L_GD = 0.7, psi = 0.
inline constexpr IntensityParams kStrikeStudy{0.005, 0.229, 0.0134, 0.078, 1.5, 0.0067};
inline constexpr double kStrikeStudyForwardBps = 204.0;

struct NamedModel {
    std::string_view name;
    IntensityParams params;
};

inline constexpr std::array<NamedModel, 3> kSmileModels{{
    {"Model1", {0.0007, 0.4066, 0.0515, 0.1507, 0.5009, 0.0050}},
    {"Model2", {1.3e-6, 0.4851, 0.0457, 0.2000, 0.5009, 0.0050}},
    {"Model3", {0.005, 0.2281, 0.0134, 0.0782, 1.5000, 0.0067}},
}};

inline constexpr double kOptionMaturity = 1.0;
inline constexpr double kSwapEnd = 5.0;
inline constexpr double kFlatRate = 0.03;
inline constexpr double kLossGivenDefault = 0.7;

}  // namespace ssrjd::reference
