#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ssrjd {

struct QuadratureResult {
    double value = 0.0;
    double errorEstimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Globally adaptive 4-point Gauss-Lobatto quadrature with 7-point Kronrod
/// refinement (Gander-Gautschi nodes). The panel with the largest
/// |Kronrod - Lobatto| discrepancy is bisected until the summed discrepancy
/// drops to `tol` (absolute) or the evaluation budget runs out, in which case
/// the best estimate is returned with converged = false. Requires a < b.
QuadratureResult adaptiveLobatto(const std::function<double(double)>& f, double a, double b,
                                 double tol, std::size_t maxEvaluations = 1'000'000);

/// Composite Simpson on an arbitrary (possibly nonuniform) grid with an odd
/// number of nodes; consecutive triples form the panels.
double compositeSimpson(const std::function<double(double)>& f, std::span<const double> nodes);

/// Weights w such that sum_i w_i f(nodes_i) equals compositeSimpson(f, nodes).
std::vector<double> simpsonWeights(std::span<const double> nodes);

/// Grid whose pieces are the gaps between consecutive breakpoints, each cut
/// into `subintervals` equal parts (must be even and positive). Every
/// breakpoint is a node, so Simpson panels never straddle one.
std::vector<double> simpsonGrid(std::span<const double> breakpoints, int subintervals);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace ssrjd
