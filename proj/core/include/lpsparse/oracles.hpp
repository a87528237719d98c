#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lpsparse/ledger.hpp"
#include "lpsparse/lp_instance.hpp"
#include "lpsparse/mwu.hpp"
#include "lpsparse/random.hpp"

namespace lpsparse {

// Includes each i independently with probability min(q_i, 1). Sorted output.
std::vector<std::size_t> bernoulli_subset(std::span<const double> q, Rng& rng);

// Sample-solve-verify rounds allowed before RetryBudgetExceeded:
// ceil(64 ln n), at least 1.
std::size_t lvo_retry_budget(std::size_t n);

// Low-violation oracle backed by the exact simplex. Samples row i with
// probability min(2d/mu * p_i, 1), solves the sampled relaxation, and accepts
// x once <p, v^eps(x)> <= mu. A sampled relaxation without feasible points
// is reported through OracleReply::infeasible.
OracleReply exact_lvo(const LpInstance& inst, std::span<const double> p, double mu, double eps,
                      Rng& rng, QueryLedger& ledger);

// Maps a set of sampled row indices to a point, or nullopt when the sampled
// relaxation is infeasible. Must be a deterministic function of the set.
using SubsetSolver =
    std::function<std::optional<std::vector<double>>(std::span<const std::size_t> rows)>;

// Low-violation oracle for a solver whose image has at most `output_count`
// distinct points: samples with probability min(ln(N n)/mu * p_i, 1).
OracleReply approx_lvo(const LpInstance& inst, std::span<const double> p, double mu, double eps,
                       const SubsetSolver& solver, double output_count, Rng& rng,
                       QueryLedger& ledger);

// Rounds every coordinate of x in [0,1]^d up to the geometric grid
// {0} U {eps/r_p (1+eps)^k} U {1}.
std::vector<double> discretize_mpc(std::span<const double> x, double eps, std::size_t r_p);

bool on_mpc_grid(std::span<const double> x, double eps, std::size_t r_p);

// ceil(2 + 4 ln(r_p/eps) / eps): grid values per coordinate.
std::size_t mpc_grid_levels(double eps, std::size_t r_p);

}  // namespace lpsparse
