#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lpsparse/ledger.hpp"

namespace lpsparse {

enum class Status { Optimal, Approximate, Infeasible, Bottom };

std::string_view to_string(Status status);

struct SolveStats {
  std::size_t iterations = 0;
  std::size_t planned_iterations = 0;
  // Largest number of sampled rows handed to a sub-solve.
  std::size_t max_sublp = 0;
  std::vector<std::size_t> sample_sizes;
  std::size_t oracle_rounds = 0;

  // Multiplicative-weights bookkeeping: the target fed to the oracle and the
  // largest per-constraint violation count over the collected iterates.
  double oracle_mu = 0.0;
  std::uint32_t max_violation_count = 0;

  // Quantum runs: ||w(X_t)||_1 / W~_t after every estimate, and for the
  // continuous-weight solver the extreme per-row ratios w_i(X_{t+1}) / w_i(X_t).
  std::vector<double> norm_ratios;
  double min_weight_ratio = 1.0;
  double max_weight_ratio = 1.0;

  // Packing/covering runs: min_i <C_i, x_bar> before the final rescaling.
  double min_cover_before_scaling = 0.0;

  LedgerSnapshot ledger;
};

struct SolveOutcome {
  Status status = Status::Infeasible;
  std::optional<std::vector<double>> x;  // present iff Optimal or Approximate
  std::optional<double> objective;
  SolveStats stats;

  static SolveOutcome with_solution(Status status, std::vector<double> x, double objective);
  static SolveOutcome without_solution(Status status);
};

}  // namespace lpsparse
