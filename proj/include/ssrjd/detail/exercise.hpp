#pragma once

#include "ssrjd/model.hpp"

#include <vector>

namespace ssrjd::detail {

/// Discretised h(u) against the survival curve seen from T_a:
///   Phi(y) = sum_j w_j h_j a_j e^{-B_j y} + m a_b e^{-B_b y},
/// where a_j = A(T_a,u_j) e^{-int_{T_a}^{u_j} psi}, m = L_GD D(T_a,T_b) is the
/// point mass of h at T_b. Nodes come from Simpson rules on every piece of the
/// schedule, so piece boundaries appear twice (once per side).
class ExerciseBoundary {
public:
    ExerciseBoundary(const Model& m, const DiscountCurve& curve, const PaymentSchedule& schedule,
                     double strike, double lossGivenDefault, int subintervalsPerPeriod);

    /// int h(u) S(T_a,u;y) du including the point mass.
    double value(double y) const;
    /// Phi(0) - L_GD evaluated directly as int [L D dS + K S D (1 - acc r)].
    double gate() const noexcept { return gate_; }
    double lossGivenDefault() const noexcept { return lgd_; }
    double pointMass() const noexcept { return pointMass_; }

    struct Node {
        double u;
        double weight;      // Simpson weight times h_j
        double amplitude;   // a_j
        double slope;       // B_j
    };
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    /// a_b and B_b at T_b (the point mass node).
    double endAmplitude() const noexcept { return endAmplitude_; }
    double endSlope() const noexcept { return endSlope_; }

private:
    std::vector<Node> nodes_;
    double lgd_;
    double pointMass_;
    double endAmplitude_;
    double endSlope_;
    double gate_;
};

}  // namespace ssrjd::detail
