#pragma once

#include <cstddef>

#include "lpsparse/ledger.hpp"
#include "lpsparse/lp_instance.hpp"
#include "lpsparse/outcome.hpp"
#include "lpsparse/random.hpp"

namespace lpsparse {

// ceil(factor * ln n), at least 1.
std::size_t log_iterations(double factor, std::size_t n);

// Exact solve by iterated sampling: exact_lvo at eps = 0, mu = 1/(3d), for at
// most ceil(24 d ln n) rounds. Returns the first iterate that satisfies every
// constraint. Throws NoFeasibleIterate if the budget runs out first.
SolveOutcome clarkson_solve(const LpInstance& inst, Rng& rng, QueryLedger& ledger);

// Approximate solve: averages ceil(24 V_max/eps ln n) exact sub-solutions
// drawn with exact_lvo at slack eps/2 and mu = eps/(6 V_max). The average
// satisfies A x <= b + 2 eps and <c, x> >= OPT.
SolveOutcome low_precision_solve(const LpInstance& inst, double eps, Rng& rng,
                                 QueryLedger& ledger);

// Packing/covering solve with every packing row kept in each sub-problem and
// covering rows sampled by approx_lvo over the discretized inner solver.
// Returns x in [0,1]^d with C x >= 1 and P x <= (1 + 4 eps), or Infeasible.
SolveOutcome mpc_solve(const MpcInstance& mpc, double eps, Rng& rng, QueryLedger& ledger);

}  // namespace lpsparse
