#include "lpsparse/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpsparse/errors.hpp"
#include "lpsparse/simplex.hpp"

namespace lpsparse {
namespace {

constexpr double kVerifySlack = 1e-12;

void check_distribution(const LpInstance& inst, std::span<const double> p, double mu) {
  if (p.size() != inst.n()) throw ContractError("distribution length differs from row count");
  if (!(mu > 0.0)) throw ContractError("mu must be positive");
}

std::vector<double> scaled(std::span<const double> p, double factor) {
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = factor * p[i];
  return q;
}

}  // namespace

std::vector<std::size_t> bernoulli_subset(std::span<const double> q, Rng& rng) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] >= 1.0 || (q[i] > 0.0 && rng.uniform() < q[i])) out.push_back(i);
  }
  return out;
}

std::size_t lvo_retry_budget(std::size_t n) {
  const double budget = std::ceil(64.0 * std::log(static_cast<double>(n)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(budget));
}

OracleReply exact_lvo(const LpInstance& inst, std::span<const double> p, double mu, double eps,
                      Rng& rng, QueryLedger& ledger) {
  check_distribution(inst, p, mu);
  const std::vector<double> q = scaled(p, 2.0 * static_cast<double>(inst.d()) / mu);
  const std::size_t budget = lvo_retry_budget(inst.n());
  OracleReply reply;
  for (std::size_t round = 1; round <= budget; ++round) {
    SubLp sub{&inst, bernoulli_subset(q, rng)};
    ledger.charge_rows(sub.rows.size());
    reply.rounds = round;
    reply.sample_size = sub.rows.size();
    reply.max_sample_size = std::max(reply.max_sample_size, sub.rows.size());
    SolveOutcome sol = simplex_solve(sub);
    if (sol.status != Status::Optimal) {
      reply.infeasible = true;
      return reply;
    }
    ViolationVector v = violation_vector(inst, *sol.x, eps, ledger);
    if (weighted_violation(p, v) <= mu + kVerifySlack) {
      reply.x = std::move(*sol.x);
      reply.v = std::move(v);
      return reply;
    }
  }
  throw RetryBudgetExceeded("exact oracle failed " + std::to_string(budget) +
                            " verifications in a row");
}

OracleReply approx_lvo(const LpInstance& inst, std::span<const double> p, double mu, double eps,
                       const SubsetSolver& solver, double output_count, Rng& rng,
                       QueryLedger& ledger) {
  check_distribution(inst, p, mu);
  if (!(output_count >= 1.0)) throw ContractError("output count must be at least 1");
  const double rate = (std::log(output_count) + std::log(static_cast<double>(inst.n()))) / mu;
  const std::vector<double> q = scaled(p, rate);
  const std::size_t budget = lvo_retry_budget(inst.n());
  OracleReply reply;
  for (std::size_t round = 1; round <= budget; ++round) {
    const std::vector<std::size_t> rows = bernoulli_subset(q, rng);
    ledger.charge_rows(rows.size());
    reply.rounds = round;
    reply.sample_size = rows.size();
    reply.max_sample_size = std::max(reply.max_sample_size, rows.size());
    std::optional<std::vector<double>> x = solver(rows);
    if (!x) {
      reply.infeasible = true;
      return reply;
    }
    ViolationVector v = violation_vector(inst, *x, eps, ledger);
    if (weighted_violation(p, v) <= mu + kVerifySlack) {
      reply.x = std::move(*x);
      reply.v = std::move(v);
      return reply;
    }
  }
  throw RetryBudgetExceeded("bounded-output oracle failed " + std::to_string(budget) +
                            " verifications in a row");
}

namespace {

double round_up_to_grid(double x, double eps, double base) {
  if (!(x > 0.0)) return 0.0;
  if (x >= 1.0 || base >= 1.0) return 1.0;
  if (x <= base) return base;
  const double growth = 1.0 + eps;
  auto level = [&](long j) { return base * std::pow(growth, static_cast<double>(j)); };
  long j = std::max(0L, static_cast<long>(std::ceil(std::log(x / base) / std::log1p(eps))));
  while (level(j) < x) ++j;
  while (j > 0 && level(j - 1) >= x) --j;
  return std::min(level(j), 1.0);
}

}  // namespace

std::vector<double> discretize_mpc(std::span<const double> x, double eps, std::size_t r_p) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ContractError("eps must lie in (0, 1]");
  const double base = eps / static_cast<double>(std::max<std::size_t>(r_p, 1));
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = round_up_to_grid(x[j], eps, base);
  return out;
}

bool on_mpc_grid(std::span<const double> x, double eps, std::size_t r_p) {
  const std::vector<double> rounded = discretize_mpc(x, eps, r_p);
  return std::equal(rounded.begin(), rounded.end(), x.begin(), x.end());
}

std::size_t mpc_grid_levels(double eps, std::size_t r_p) {
  const double rp = static_cast<double>(std::max<std::size_t>(r_p, 1));
  const double levels = std::ceil(2.0 + 4.0 * std::log(rp / eps) / eps);
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::max(levels, 2.0)));
}

}  // namespace lpsparse
