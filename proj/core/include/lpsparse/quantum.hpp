#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lpsparse/ledger.hpp"
#include "lpsparse/lp_instance.hpp"
#include "lpsparse/outcome.hpp"
#include "lpsparse/random.hpp"

namespace lpsparse {

// Classical stand-in for the quantum query model. Every procedure draws from
// exactly the distribution its quantum counterpart would produce; only the
// ledger knows what the quantum routine would have paid.
struct QueryCostModel {
  double charge_constant = 1.0;
  int polylog_exponent = 1;
  // Also charge the classical row reads the simulation itself performs.
  bool record_actual = false;
  // Failure injection, off by default.
  double grover_failure_rate = 0.0;
  double estimation_failure_rate = 0.0;
};

// ceil(charge_constant * sqrt(n * max(sum_q, 1)) * (ln n)^polylog_exponent)
std::uint64_t subset_sample_units(std::size_t n, double sum_q, const QueryCostModel& model);

// ceil(charge_constant * sqrt(n * ln(1/p)))
std::uint64_t grover_units(std::size_t n, double p, const QueryCostModel& model);

// Query access to nonnegative weights, held in log2 form. Rows that share a
// weight are grouped so subsets can be drawn without touching every row.
class WeightOracle {
 public:
  // Rows whose weights share one power-of-two band. `log2_weight` is the
  // largest weight in the band. Groups built from counts hold equal weights
  // and leave `member_log2` empty; otherwise it lists the members' weights
  // heaviest first, in the same order as `members`.
  struct Group {
    double log2_weight = 0.0;
    std::vector<std::size_t> members;
    std::vector<double> member_log2;
    // 2^(member_log2 - log2_weight), in (1/2, 1].
    std::vector<double> member_scale;
  };

  // w_i = 2^{counts_i}; one evaluation costs `row_cost` row queries.
  static WeightOracle from_counts(std::span<const std::uint32_t> counts, std::uint64_t row_cost);
  // Arbitrary positive weights given as log2 values.
  static WeightOracle from_log2(std::span<const double> log2_weights, std::uint64_t row_cost);

  std::size_t size() const noexcept { return n_; }
  std::uint64_t row_cost() const noexcept { return row_cost_; }
  const std::vector<Group>& groups() const noexcept { return groups_; }
  double log2_weight(std::size_t i) const;
  // Exact log2 ||w||_1. The simulator reads this for free; the quantum
  // procedures never do.
  double log2_norm() const;

 private:
  std::size_t n_ = 0;
  std::uint64_t row_cost_ = 0;
  std::vector<Group> groups_;
  std::vector<std::uint32_t> group_of_;
  std::vector<std::uint32_t> slot_of_;
};

// Subset with i included independently with probability q_i. Charges
// subset_sample_units(n, sum q) * row_cost under "q_subset_sample".
std::vector<std::size_t> q_subset_sample(std::span<const double> q, const QueryCostModel& model,
                                         QueryLedger& ledger, Rng& rng, std::size_t iteration = 0,
                                         std::uint64_t row_cost = 1);

// ceil(1 + 5 ln(1/p))
std::size_t sampling_repetitions(double p);

// Draws R = sampling_repetitions(p) subsets with q_i = min(s w_i / W~, 1) and
// returns the one whose size is the (lower) median. W~ is passed as log2 W~.
// Charges R * units * row_cost under "quantum_sampling".
std::vector<std::size_t> quantum_sampling(const WeightOracle& w, double s, double log2_w_tilde,
                                          double p, const QueryCostModel& model,
                                          QueryLedger& ledger, Rng& rng,
                                          std::size_t iteration = 0);

// W~' = W~/(2s) (sqrt(3 + 2|S|) - sqrt(3))^2
double estimate_from_sample_size(double w_tilde, double s, std::size_t sample_size);

inline constexpr double kEstimationSampleSize = 71.0;

// Procedure 2: returns log2 of the new estimate W~' built from the size of a
// quantum_sampling draw with s = 71. Charged under "estimation_sum".
double estimation_sum(const WeightOracle& w, double log2_w_tilde, double p,
                      const QueryCostModel& model, QueryLedger& ledger, Rng& rng,
                      std::size_t iteration = 0);

struct GroverResult {
  std::optional<std::size_t> index;  // empty: every constraint satisfied
};

// Uniformly random index among the rows violated by x at slack eps, or
// nothing. Charges grover_units(n, p) under "grover_find_violated".
GroverResult grover_find_violated(const LpInstance& inst, std::span<const double> x, double eps,
                                  double p, const QueryCostModel& model, QueryLedger& ledger,
                                  Rng& rng, std::size_t iteration = 0);

// (1 / (32 n ln n)) * (1 / (100 n^2)), with ln n floored at ln 2.
double failure_probability(std::size_t n);

// Quantum Clarkson: s = 6d^2, T = ceil(24 d ln n), weights 2^{#violations at
// slack 0}, then an end scan that returns the first feasible iterate or Bottom.
SolveOutcome quantum_clarkson(const LpInstance& inst, const QueryCostModel& model, Rng& rng,
                              QueryLedger& ledger);

// Packing/covering with sampled covering rows: T = ceil(24/eps ln n_c).
SolveOutcome quantum_mpc(const MpcInstance& mpc, double eps, const QueryCostModel& model,
                         Rng& rng, QueryLedger& ledger);

// s = 6 d V_max / eps, T = ceil(24 V_max/eps ln n), weights 2^{#violations at
// slack eps}; a weight evaluation at iteration t costs t row queries.
SolveOutcome quantum_lp_one_sided(const LpInstance& inst, double eps,
                                  const QueryCostModel& model, Rng& rng, QueryLedger& ledger);

// s = 6 d rho / eps, T = ceil(16 rho/eps ln n), weights
// 2^{(<A_i, sum x> - t b_i) / rho}; a weight evaluation costs 1 row query.
SolveOutcome quantum_lp_two_sided(const LpInstance& inst, double eps,
                                  const QueryCostModel& model, Rng& rng, QueryLedger& ledger);

// The sample-size multiplier used by quantum_mpc:
// max(6, 6 d/eps ln(max(ln(r_p/eps), 1) / eps)).
double quantum_mpc_sample_size(std::size_t d, double eps, std::size_t r_p);

}  // namespace lpsparse
