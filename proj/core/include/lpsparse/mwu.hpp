#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lpsparse/violation.hpp"

namespace lpsparse {

// Weights w_i = 2^counts_i, where counts_i is the number of collected
// iterates that violated constraint i. Only the integer counts are stored.
class WeightState {
 public:
  explicit WeightState(std::size_t n) : counts_(n, 0) {}

  // w_i <- w_i * 2^{v_i}
  void apply(const ViolationVector& v);

  std::size_t size() const noexcept { return counts_.size(); }
  std::size_t iteration() const noexcept { return iteration_; }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }
  std::uint32_t max_count() const noexcept { return max_count_; }

  // log2 ||w||_1, exact up to rounding for any count magnitude.
  double log2_norm() const;

 private:
  std::vector<std::uint32_t> counts_;
  std::uint32_t max_count_ = 0;
  std::size_t iteration_ = 0;
};

// p_i = 2^{counts_i} / sum_k 2^{counts_k}, evaluated with the largest count
// shifted to zero so nothing overflows.
std::vector<double> probabilities(const WeightState& ws);
std::vector<double> probabilities(std::span<const std::uint32_t> counts);

// <p, v>
double weighted_violation(std::span<const double> p, const ViolationVector& v);

// log sum_i exp(x_i) and its gradient, the softmax.
double smax(std::span<const double> x);
std::vector<double> smax_gradient(std::span<const double> x);

// smax(x + delta) <= smax(x) + 2 <grad smax(x), delta> + 1e-9
bool smax_check(std::span<const double> x, std::span<const double> delta);

struct SolutionSet {
  std::vector<std::vector<double>> xs;
  double eps = 0.0;
  double mu = 0.0;
};

// What a low-violation oracle hands back for one distribution p.
struct OracleReply {
  std::vector<double> x;
  ViolationVector v;
  bool infeasible = false;     // a sampled relaxation had no feasible point
  std::size_t sample_size = 0;  // sampled rows in the accepted round
  std::size_t max_sample_size = 0;
  std::size_t rounds = 1;
};

using LowViolationOracle = std::function<OracleReply(std::span<const double> p)>;

struct FrameworkOptions {
  double eps = 0.0;
  double oracle_mu = 0.0;  // the bound every reply must meet
  std::size_t iterations = 0;
  // Checked after each accepted reply; returning true ends the run.
  std::function<bool(const OracleReply&)> stop_when;
};

struct FrameworkResult {
  SolutionSet solutions;
  WeightState weights{0};
  bool infeasible = false;
  bool stopped_early = false;
  std::vector<std::size_t> sample_sizes;
  std::size_t max_sample_size = 0;
  std::size_t oracle_rounds = 0;
};

// Runs the oracle for up to options.iterations rounds against the current
// weights, doubling the weight of every violated constraint after each one.
// Throws OracleContractBroken when a reply misses options.oracle_mu and
// MwuBoundViolated when the counts break mwu_count_bound.
FrameworkResult framework_run(std::size_t n, const LowViolationOracle& oracle,
                              const FrameworkOptions& options);

// Potential bound on max_i counts_i after `done` iterations in which every
// reply met <p, v> <= mu: sum_i 2^{counts_i} <= n (1 + mu)^done, hence
//   max_i counts_i <= log2 n + done * mu / ln 2.
// For done <= planned with planned >= ln n / mu this is below 3 mu planned.
double mwu_count_bound(std::size_t n, double mu, std::size_t done);

// 3 mu T, the frequency bound for a run of T iterations.
double mwu_frequency_bound(double mu, std::size_t planned);

}  // namespace lpsparse
