#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpsparse/lp_instance.hpp"
#include "lpsparse/outcome.hpp"

namespace lpsparse {

// Rows of an instance chosen by sampling. The effective constraint set is
// these rows plus the retained block plus the box bounds.
struct SubLp {
  const LpInstance* instance = nullptr;
  std::vector<std::size_t> rows;
};

// Exact maximizer of <c, x> over the effective constraint set of `sub`.
// Deterministic: the same rows always give the same x, bit for bit.
SolveOutcome simplex_solve(const SubLp& sub);

// max <c, x> s.t. G x <= h, lower <= x <= upper.
//
// Dual simplex over vertices: the box corner that maximizes <c, x> is dual
// feasible, so no phase one is needed. Each pivot brings the lowest-index
// violated row into the active set and drops the lowest-index row among the
// ratio-test ties (Bland's rule for the dual), which rules out cycling. A
// dual ray certifies infeasibility; the box rules out unboundedness.
SolveOutcome solve_box_lp(const Matrix& G, std::span<const double> h, std::span<const double> c,
                          const BoxDomain& box);

// x in [0,1]^d with P x <= 1 and C x >= 1, or Infeasible. Solved exactly by
// maximizing the smallest covering slack t (capped at 0) over (x, t).
SolveOutcome mpc_inner_solve(const Matrix& P, const Matrix& C_sampled, double eps);

}  // namespace lpsparse
