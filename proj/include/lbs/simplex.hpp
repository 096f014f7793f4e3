#pragma once

#include <vector>

#include "lbs/rational.hpp"

namespace lbs {

enum class LpStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  LpStatus status = LpStatus::optimal;
  Rat objective;
  std::vector<Rat> x;  // a basic (vertex) optimal solution when optimal
};

// Maximize c*x subject to A x <= b, x >= 0, in exact rational arithmetic.
// Dense two-phase tableau with Bland's rule (terminates on degenerate
// instances). Rows of b may be negative; phase one then introduces
// artificials.
SimplexResult simplex_max(const std::vector<std::vector<Rat>>& a,
                          const std::vector<Rat>& b,
                          const std::vector<Rat>& c);

// Minimize sum(x) subject to A x >= b, x >= 0 (covering form).
SimplexResult simplex_min_cover(const std::vector<std::vector<Rat>>& a,
                                const std::vector<Rat>& b);

}  // namespace lbs
