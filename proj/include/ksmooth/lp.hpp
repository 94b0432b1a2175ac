#pragma once

// Exact two-phase tableau simplex for problems in standard form
//   maximize c.x  subject to  A x = b,  x >= 0.
// Bland's rule is used throughout, so the method terminates on degenerate
// problems.

#include <optional>

#include "ksmooth/linalg.hpp"

namespace ksmooth {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <ExactField K>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector<K> x;       // primal solution when Optimal
  K objective{0};
};

template <ExactField K>
LpResult<K> maximize(const Matrix<K>& a, const Vector<K>& b, const Vector<K>& c);

/// A point of {x >= 0 : A x = b}, if one exists.
template <ExactField K>
std::optional<Vector<K>> find_feasible(const Matrix<K>& a, const Vector<K>& b);

/// Weights lambda >= 0 with sum 1 and sum lambda_i points_i = target, if the
/// target lies in the convex hull.
template <ExactField K>
std::optional<Vector<K>> convex_combination(const std::vector<Vector<K>>& points,
                                            const Vector<K>& target);

}  // namespace ksmooth
