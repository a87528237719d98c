#include "lpsparse/mwu.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpsparse/errors.hpp"

namespace lpsparse {

void WeightState::apply(const ViolationVector& v) {
  if (v.size() != counts_.size()) {
    throw ContractError("violation vector has " + std::to_string(v.size()) + " entries, weights " +
                        std::to_string(counts_.size()));
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += v.bits[i];
    max_count_ = std::max(max_count_, counts_[i]);
  }
  ++iteration_;
}

double WeightState::log2_norm() const {
  double sum = 0.0;
  for (std::uint32_t c : counts_) sum += std::exp2(static_cast<double>(c) - max_count_);
  return max_count_ + std::log2(sum);
}

std::vector<double> probabilities(std::span<const std::uint32_t> counts) {
  std::vector<double> p(counts.size());
  if (counts.empty()) return p;
  const std::uint32_t top = *std::max_element(counts.begin(), counts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = std::exp2(static_cast<double>(counts[i]) - top);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

std::vector<double> probabilities(const WeightState& ws) { return probabilities(ws.counts()); }

double weighted_violation(std::span<const double> p, const ViolationVector& v) {
  if (p.size() != v.size()) throw ContractError("distribution and violation lengths differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (v.bits[i] != 0) sum += p[i];
  }
  return sum;
}

double smax(std::span<const double> x) {
  if (x.empty()) return -HUGE_VAL;
  const double top = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - top);
  return top + std::log(sum);
}

std::vector<double> smax_gradient(std::span<const double> x) {
  std::vector<double> g(x.size());
  if (x.empty()) return g;
  const double top = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = std::exp(x[i] - top);
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

bool smax_check(std::span<const double> x, std::span<const double> delta) {
  if (x.size() != delta.size()) throw ContractError("x and delta lengths differ");
  std::vector<double> moved(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) moved[i] += delta[i];
  const auto grad = smax_gradient(x);
  return smax(moved) <= smax(x) + 2.0 * dot(grad, delta) + 1e-9;
}

double mwu_count_bound(std::size_t n, double mu, std::size_t done) {
  return std::log2(static_cast<double>(n)) + static_cast<double>(done) * mu / std::log(2.0);
}

double mwu_frequency_bound(double mu, std::size_t planned) {
  return 3.0 * mu * static_cast<double>(planned);
}

FrameworkResult framework_run(std::size_t n, const LowViolationOracle& oracle,
                              const FrameworkOptions& options) {
  if (!(options.oracle_mu > 0.0)) throw ContractError("oracle target must be positive");
  FrameworkResult result;
  result.weights = WeightState(n);
  result.solutions.eps = options.eps;
  result.solutions.mu = options.oracle_mu;

  for (std::size_t t = 0; t < options.iterations; ++t) {
    const std::vector<double> p = probabilities(result.weights);
    OracleReply reply = oracle(p);
    result.oracle_rounds += reply.rounds;
    result.max_sample_size = std::max(result.max_sample_size, reply.max_sample_size);
    if (reply.infeasible) {
      result.infeasible = true;
      return result;
    }
    const double wv = weighted_violation(p, reply.v);
    if (wv > options.oracle_mu + 1e-12) {
      throw OracleContractBroken("oracle reply has weighted violation " + std::to_string(wv) +
                                 " above " + std::to_string(options.oracle_mu));
    }
    result.weights.apply(reply.v);
    result.sample_sizes.push_back(reply.sample_size);
    result.solutions.xs.push_back(std::move(reply.x));

    const double bound = mwu_count_bound(n, options.oracle_mu, t + 1);
    if (result.weights.max_count() > bound + 1e-9) {
      throw MwuBoundViolated("violation count " + std::to_string(result.weights.max_count()) +
                             " exceeds the potential bound " + std::to_string(bound));
    }
    if (options.stop_when && options.stop_when(reply)) {
      result.stopped_early = true;
      break;
    }
  }

  const double planned = static_cast<double>(options.iterations);
  if (planned * options.oracle_mu >= std::log(static_cast<double>(n)) &&
      result.weights.max_count() > mwu_frequency_bound(options.oracle_mu, options.iterations)) {
    throw MwuBoundViolated("violation count exceeds 3 mu T");
  }
  return result;
}

}  // namespace lpsparse
