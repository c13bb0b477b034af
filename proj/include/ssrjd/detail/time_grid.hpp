#pragma once

#include "ssrjd/model.hpp"

#include <vector>

namespace ssrjd::detail {

/// Maximal interval of [from, to] on which the accrual start, the short rate
/// and the shift are all constant.
struct GridPiece {
    double start;
    double end;
    double accrualStart;  // T_{beta(u)-1} for every u inside the piece
    double rate;
    double shift;
};

/// Pieces between schedule dates, rate knots and shift knots, restricted to
/// [schedule.start(), schedule.end()].
std::vector<GridPiece> schedulePieces(const PaymentSchedule& schedule, const DiscountCurve& curve,
                                      const ShiftFunction& shift);

/// Uniform Simpson nodes and weights on one piece with `subintervals` (even) parts.
struct PieceRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
PieceRule pieceRule(const GridPiece& piece, int subintervals);

}  // namespace ssrjd::detail
