#include "ssrjd/detail/time_grid.hpp"

#include "ssrjd/errors.hpp"

#include <algorithm>

namespace ssrjd::detail {

std::vector<GridPiece> schedulePieces(const PaymentSchedule& schedule, const DiscountCurve& curve,
                                      const ShiftFunction& shift) {
    const double lo = schedule.start();
    const double hi = schedule.end();
    std::vector<double> cuts(schedule.dates().begin(), schedule.dates().end());
    for (double k : curve.knots()) {
        if (k > lo && k < hi) cuts.push_back(k);
    }
    for (double k : shift.knots()) {
        if (k > lo && k < hi) cuts.push_back(k);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<GridPiece> pieces;
    pieces.reserve(cuts.size() - 1);
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double a = cuts[i - 1];
        const double b = cuts[i];
        const double mid = 0.5 * (a + b);
        pieces.push_back({a, b, schedule.lastPaymentBefore(mid), curve.rate(mid), shift.value(mid)});
    }
    return pieces;
}

PieceRule pieceRule(const GridPiece& piece, int subintervals) {
    if (subintervals <= 0 || subintervals % 2 != 0) {
        throw ArgumentError("Simpson subintervals per period must be positive and even");
    }
    PieceRule rule;
    const auto n = static_cast<std::size_t>(subintervals);
    rule.nodes.resize(n + 1);
    rule.weights.resize(n + 1);
    const double step = (piece.end - piece.start) / subintervals;
    for (std::size_t j = 0; j <= n; ++j) {
        rule.nodes[j] = j == n ? piece.end : piece.start + step * static_cast<double>(j);
        const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        rule.weights[j] = w * step / 3.0;
    }
    return rule;
}

}  // namespace ssrjd::detail
