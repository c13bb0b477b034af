#include "ssrjd/quadrature.hpp"

#include "ssrjd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ssrjd {

namespace {

const double kAlpha = std::sqrt(2.0 / 3.0);
const double kBeta = 1.0 / std::sqrt(5.0);

struct Panel {
    double a;
    double b;
    double fa;
    double fb;
    double fm;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluatePanel(const std::function<double(double)>& f, double a, double b, double fa,
                    double fb) {
    const double h = 0.5 * (b - a);
    const double m = 0.5 * (a + b);
    const double fmll = f(m - kAlpha * h);
    const double fml = f(m - kBeta * h);
    const double fm = f(m);
    const double fmr = f(m + kBeta * h);
    const double fmrr = f(m + kAlpha * h);
    const double lobatto = (h / 6.0) * (fa + fb + 5.0 * (fml + fmr));
    const double kronrod = (h / 1470.0) * (77.0 * (fa + fb) + 432.0 * (fmll + fmrr) +
                                           625.0 * (fml + fmr) + 672.0 * fm);
    return {a, b, fa, fb, fm, kronrod, std::abs(kronrod - lobatto)};
}

bool splittable(const Panel& p) {
    const double m = 0.5 * (p.a + p.b);
    const double scale = std::max(std::abs(p.a), std::abs(p.b));
    return m > p.a && m < p.b &&
           (p.b - p.a) > 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

QuadratureResult adaptiveLobatto(const std::function<double(double)>& f, double a, double b,
                                 double tol, std::size_t maxEvaluations) {
    if (!(a < b)) throw ArgumentError("adaptiveLobatto: require a < b");
    if (!(tol > 0.0)) throw ArgumentError("adaptiveLobatto: tolerance must be positive");

    QuadratureResult result;
    std::vector<Panel> open;  // max-heap on error
    std::vector<Panel> closed;

    const double fa = f(a);
    const double fb = f(b);
    open.push_back(evaluatePanel(f, a, b, fa, fb));
    result.evaluations = 7;

    // The running total drifts by rounding; it is re-summed before stopping.
    auto exactError = [&] {
        CompensatedSum e;
        for (const Panel& p : open) e.add(p.error);
        for (const Panel& p : closed) e.add(p.error);
        return e.value();
    };
    double totalError = open.front().error;
    while (!open.empty()) {
        if (totalError <= tol) {
            totalError = exactError();
            if (totalError <= tol) break;
        }
        if (result.evaluations + 10 > maxEvaluations) break;
        std::pop_heap(open.begin(), open.end());
        const Panel worst = open.back();
        open.pop_back();
        if (!splittable(worst)) {
            closed.push_back(worst);
            continue;
        }
        totalError -= worst.error;
        const double m = 0.5 * (worst.a + worst.b);
        const Panel left = evaluatePanel(f, worst.a, m, worst.fa, worst.fm);
        const Panel right = evaluatePanel(f, m, worst.b, worst.fm, worst.fb);
        result.evaluations += 10;
        totalError += left.error + right.error;
        open.push_back(left);
        std::push_heap(open.begin(), open.end());
        open.push_back(right);
        std::push_heap(open.begin(), open.end());
    }

    // Sum in left-to-right order so the value does not depend on heap layout.
    std::vector<Panel> leaves = std::move(closed);
    leaves.insert(leaves.end(), open.begin(), open.end());
    std::sort(leaves.begin(), leaves.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    CompensatedSum value;
    CompensatedSum error;
    for (const Panel& p : leaves) {
        value.add(p.value);
        error.add(p.error);
    }
    result.value = value.value();
    result.errorEstimate = error.value();
    result.converged = result.errorEstimate <= tol && std::isfinite(result.value);
    return result;
}

std::vector<double> simpsonWeights(std::span<const double> nodes) {
    if (nodes.size() < 3 || nodes.size() % 2 == 0) {
        throw ArgumentError("compositeSimpson: need an odd number (>= 3) of nodes");
    }
    std::vector<double> w(nodes.size(), 0.0);
    for (std::size_t i = 0; i + 2 < nodes.size(); i += 2) {
        const double h0 = nodes[i + 1] - nodes[i];
        const double h1 = nodes[i + 2] - nodes[i + 1];
        if (!(h0 > 0.0 && h1 > 0.0)) {
            throw ArgumentError("compositeSimpson: nodes must be strictly increasing");
        }
        const double span = h0 + h1;
        w[i] += span / 6.0 * (2.0 - h1 / h0);
        w[i + 1] += span / 6.0 * span * span / (h0 * h1);
        w[i + 2] += span / 6.0 * (2.0 - h0 / h1);
    }
    return w;
}

double compositeSimpson(const std::function<double(double)>& f, std::span<const double> nodes) {
    const std::vector<double> w = simpsonWeights(nodes);
    CompensatedSum sum;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum.add(w[i] * f(nodes[i]));
    return sum.value();
}

std::vector<double> simpsonGrid(std::span<const double> breakpoints, int subintervals) {
    if (subintervals <= 0 || subintervals % 2 != 0) {
        throw ArgumentError("simpsonGrid: subintervals per piece must be positive and even");
    }
    if (breakpoints.size() < 2) throw ArgumentError("simpsonGrid: need at least two breakpoints");
    std::vector<double> grid;
    grid.reserve((breakpoints.size() - 1) * static_cast<std::size_t>(subintervals) + 1);
    grid.push_back(breakpoints.front());
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const double a = breakpoints[i - 1];
        const double b = breakpoints[i];
        if (!(b > a)) throw ArgumentError("simpsonGrid: breakpoints must be strictly increasing");
        for (int j = 1; j < subintervals; ++j) grid.push_back(a + (b - a) * j / subintervals);
        grid.push_back(b);
    }
    return grid;
}

}  // namespace ssrjd
