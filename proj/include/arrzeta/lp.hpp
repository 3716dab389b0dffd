#pragma once

#include <cstddef>
#include <vector>

#include "arrzeta/matrix.hpp"

namespace arrzeta {

// maximize objective . x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,
// x_j >= 0 unless free[j].
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> free;
  RationalVector objective;
  std::vector<RationalVector> a_ub;
  RationalVector b_ub;
  std::vector<RationalVector> a_eq;
  RationalVector b_eq;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  RationalVector x;
  Rational objective;
  std::size_t pivots = 0;
};

// Two-phase exact simplex with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace arrzeta
