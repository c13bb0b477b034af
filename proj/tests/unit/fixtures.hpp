#pragma once

#include "ssrjd/model.hpp"
#include "ssrjd/reference_sets.hpp"

#include <cmath>

namespace fixture {

inline ssrjd::Model model(const ssrjd::IntensityParams& p) { return {p, ssrjd::ShiftFunction::zero()}; }

/// Strike-study setup: 1y into 4y quarterly, flat 3%, L_GD = 0.7.
inline ssrjd::SwaptionSpec spec(double strike) {
    return {0.0, ssrjd::PaymentSchedule::regular(1.0, 5.0, 4), strike, 0.7};
}

inline ssrjd::DiscountCurve flat() { return ssrjd::DiscountCurve(0.03); }

inline ssrjd::IntensityParams modelParams(int i) {
    return ssrjd::reference::kSmileModels.at(static_cast<std::size_t>(i)).params;
}

inline bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

}  // namespace fixture
