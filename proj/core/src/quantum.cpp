#include "lpsparse/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

#include "lpsparse/classical.hpp"
#include "lpsparse/errors.hpp"
#include "lpsparse/mwu.hpp"
#include "lpsparse/oracles.hpp"
#include "lpsparse/simplex.hpp"
#include "lpsparse/violation.hpp"
#include "solver_common.hpp"

namespace lpsparse {
namespace {

constexpr std::string_view kSamplingRecord = "quantum_sampling";
constexpr std::string_view kEstimationRecord = "estimation_sum";
constexpr std::string_view kGroverRecord = "grover_find_violated";
constexpr std::string_view kSubsetRecord = "q_subset_sample";

// Rates for one Procedure-1 call. Uniform groups sample by size; members of
// the other groups are laid out heaviest first, split into a prefix included
// with certainty and a tail with q < 1.
struct Rates {
  std::vector<std::size_t> uniform;  // indices of the uniform groups
  std::vector<double> uniform_q;
  std::vector<std::size_t> certain;
  std::vector<std::size_t> tail;
  std::vector<double> tail_q;
  double sum = 0.0;
};

Rates rates_for(const WeightOracle& w, double log2_s, double log2_w_tilde) {
  Rates r;
  const auto& groups = w.groups();
  // Groups are ordered by increasing weight.
  for (std::size_t g = groups.size(); g-- > 0;) {
    const auto& group = groups[g];
    const double q_top = std::exp2(log2_s + group.log2_weight - log2_w_tilde);
    if (group.member_log2.empty()) {
      r.uniform.push_back(g);
      r.uniform_q.push_back(q_top);
      r.sum += static_cast<double>(group.members.size()) * std::min(q_top, 1.0);
      continue;
    }
    for (std::size_t k = 0; k < group.members.size(); ++k) {
      const double q = q_top * group.member_scale[k];
      if (q >= 1.0) {
        r.certain.push_back(group.members[k]);
        r.sum += 1.0;
      } else {
        r.tail.push_back(group.members[k]);
        r.tail_q.push_back(q);
        r.sum += q;
      }
    }
  }
  return r;
}

// One Procedure-1 repetition, stored compactly: uniform groups keep only how
// many members were drawn; tail draws keep the members themselves.
struct Draw {
  std::size_t size = 0;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> members;
};

Draw draw_once(const WeightOracle& w, const Rates& rates, Rng& rng) {
  Draw draw;
  draw.counts.resize(rates.uniform.size());
  for (std::size_t u = 0; u < rates.uniform.size(); ++u) {
    const std::size_t size = w.groups()[rates.uniform[u]].members.size();
    const double q = rates.uniform_q[u];
    draw.counts[u] = q >= 1.0 ? size : rng.binomial(size, q);
    draw.size += draw.counts[u];
  }
  draw.size += rates.certain.size();
  // The tail is sorted by decreasing q, so the rate at the current position
  // dominates everything after it: skip geometrically at that rate, thin the
  // landing member to its own rate, then re-anchor.
  const auto& q = rates.tail_q;
  for (std::size_t pos = 0; pos < q.size(); ++pos) {
    const double anchor = q[pos];
    if (!(anchor > 0.0)) break;
    const double skip = std::floor(std::log(1.0 - rng.uniform()) / std::log1p(-anchor));
    if (!(skip < static_cast<double>(q.size() - pos))) break;
    pos += static_cast<std::size_t>(skip);
    if (rng.uniform() * anchor < q[pos]) {
      draw.members.push_back(rates.tail[pos]);
      ++draw.size;
    }
  }
  return draw;
}

std::vector<std::size_t> materialize(const WeightOracle& w, const Rates& rates, const Draw& draw,
                                     Rng& rng) {
  std::vector<std::size_t> out = draw.members;
  out.insert(out.end(), rates.certain.begin(), rates.certain.end());
  for (std::size_t u = 0; u < rates.uniform.size(); ++u) {
    const auto& members = w.groups()[rates.uniform[u]].members;
    const std::size_t k = draw.counts[u];
    if (k == members.size()) {
      out.insert(out.end(), members.begin(), members.end());
      continue;
    }
    // Floyd's algorithm: a uniform k-subset of the group.
    std::unordered_set<std::size_t> picked;
    picked.reserve(k);
    for (std::size_t j = members.size() - k; j < members.size(); ++j) {
      const std::size_t t = rng.below(j + 1);
      if (!picked.insert(t).second) picked.insert(j);
    }
    for (std::size_t slot : picked) out.push_back(members[slot]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> median_sample(const WeightOracle& w, double s, double log2_w_tilde,
                                       double p, const QueryCostModel& model, QueryLedger& ledger,
                                       Rng& rng, std::size_t iteration,
                                       std::string_view procedure) {
  if (!(s > 0.0)) throw ContractError("sample size parameter must be positive");
  const Rates rates = rates_for(w, std::log2(s), log2_w_tilde);
  const std::size_t reps = sampling_repetitions(p);
  std::vector<Draw> draws;
  draws.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) draws.push_back(draw_once(w, rates, rng));

  std::vector<std::size_t> order(reps);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return draws[a].size < draws[b].size; });
  const Draw& chosen = draws[order[(reps - 1) / 2]];

  const std::uint64_t units = subset_sample_units(w.size(), rates.sum, model);
  ledger.charge_quantum(procedure, iteration, reps * units, w.row_cost());
  if (model.record_actual) ledger.charge_rows(w.size() * w.row_cost());
  return materialize(w, rates, chosen, rng);
}

}  // namespace

std::uint64_t subset_sample_units(std::size_t n, double sum_q, const QueryCostModel& model) {
  const double nn = static_cast<double>(n);
  const double polylog = std::pow(std::max(std::log(nn), 1.0), model.polylog_exponent);
  return static_cast<std::uint64_t>(
      std::ceil(model.charge_constant * std::sqrt(nn * std::max(sum_q, 1.0)) * polylog));
}

std::uint64_t grover_units(std::size_t n, double p, const QueryCostModel& model) {
  return static_cast<std::uint64_t>(
      std::ceil(model.charge_constant * std::sqrt(static_cast<double>(n) * std::log(1.0 / p))));
}

WeightOracle WeightOracle::from_counts(std::span<const std::uint32_t> counts,
                                       std::uint64_t row_cost) {
  WeightOracle w;
  w.n_ = counts.size();
  w.row_cost_ = row_cost;
  const std::uint32_t top = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  std::vector<std::uint32_t> slot(static_cast<std::size_t>(top) + 1, UINT32_MAX);
  w.group_of_.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (slot[counts[i]] == UINT32_MAX) slot[counts[i]] = 0;
  }
  for (std::uint32_t c = 0; c <= top; ++c) {
    if (slot[c] == UINT32_MAX) continue;
    slot[c] = static_cast<std::uint32_t>(w.groups_.size());
    w.groups_.push_back({static_cast<double>(c), {}, {}, {}});
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    w.group_of_[i] = slot[counts[i]];
    w.groups_[slot[counts[i]]].members.push_back(i);
  }
  return w;
}

WeightOracle WeightOracle::from_log2(std::span<const double> log2_weights,
                                     std::uint64_t row_cost) {
  WeightOracle w;
  w.n_ = log2_weights.size();
  w.row_cost_ = row_cost;
  for (double v : log2_weights) {
    if (!std::isfinite(v)) throw ContractError("weights must be positive and finite");
  }
  std::vector<std::size_t> order(w.n_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return log2_weights[a] > log2_weights[b];
  });
  w.group_of_.resize(w.n_);
  w.slot_of_.resize(w.n_);
  // Walk from the heaviest weight down, opening a group per band.
  for (std::size_t k = 0; k < order.size();) {
    const double band = std::floor(log2_weights[order[k]]);
    Group g;
    g.log2_weight = log2_weights[order[k]];
    for (; k < order.size() && std::floor(log2_weights[order[k]]) == band; ++k) {
      const std::size_t i = order[k];
      g.members.push_back(i);
      g.member_log2.push_back(log2_weights[i]);
      g.member_scale.push_back(std::exp2(log2_weights[i] - g.log2_weight));
    }
    w.groups_.push_back(std::move(g));
  }
  // Groups are kept in increasing weight order, as from_counts does.
  std::reverse(w.groups_.begin(), w.groups_.end());
  for (std::size_t g = 0; g < w.groups_.size(); ++g) {
    const auto& members = w.groups_[g].members;
    for (std::size_t k = 0; k < members.size(); ++k) {
      w.group_of_[members[k]] = static_cast<std::uint32_t>(g);
      w.slot_of_[members[k]] = static_cast<std::uint32_t>(k);
    }
  }
  return w;
}

double WeightOracle::log2_weight(std::size_t i) const {
  const Group& g = groups_.at(group_of_.at(i));
  return g.member_log2.empty() ? g.log2_weight : g.member_log2[slot_of_[i]];
}

double WeightOracle::log2_norm() const {
  double top = -HUGE_VAL;
  for (const auto& g : groups_) top = std::max(top, g.log2_weight);
  double sum = 0.0;
  for (const auto& g : groups_) {
    if (g.member_log2.empty()) {
      sum += static_cast<double>(g.members.size()) * std::exp2(g.log2_weight - top);
    } else {
      for (double lw : g.member_log2) sum += std::exp2(lw - top);
    }
  }
  return top + std::log2(sum);
}

std::vector<std::size_t> q_subset_sample(std::span<const double> q, const QueryCostModel& model,
                                         QueryLedger& ledger, Rng& rng, std::size_t iteration,
                                         std::uint64_t row_cost) {
  double sum_q = 0.0;
  for (double v : q) sum_q += std::clamp(v, 0.0, 1.0);
  ledger.charge_quantum(kSubsetRecord, iteration, subset_sample_units(q.size(), sum_q, model),
                        row_cost);
  if (model.record_actual) ledger.charge_rows(q.size() * row_cost);
  return bernoulli_subset(q, rng);
}

std::size_t sampling_repetitions(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ContractError("failure probability must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(1.0 + 5.0 * std::log(1.0 / p)));
}

std::vector<std::size_t> quantum_sampling(const WeightOracle& w, double s, double log2_w_tilde,
                                          double p, const QueryCostModel& model,
                                          QueryLedger& ledger, Rng& rng, std::size_t iteration) {
  return median_sample(w, s, log2_w_tilde, p, model, ledger, rng, iteration, kSamplingRecord);
}

double estimate_from_sample_size(double w_tilde, double s, std::size_t sample_size) {
  const double gap = std::sqrt(3.0 + 2.0 * static_cast<double>(sample_size)) - std::sqrt(3.0);
  return w_tilde / (2.0 * s) * gap * gap;
}

double estimation_sum(const WeightOracle& w, double log2_w_tilde, double p,
                      const QueryCostModel& model, QueryLedger& ledger, Rng& rng,
                      std::size_t iteration) {
  const std::size_t size = median_sample(w, kEstimationSampleSize, log2_w_tilde, p, model, ledger,
                                         rng, iteration, kEstimationRecord)
                               .size();
  double log2_estimate = log2_w_tilde + std::log2(estimate_from_sample_size(
                                            1.0, kEstimationSampleSize, size));
  if (model.estimation_failure_rate > 0.0 && rng.bernoulli(model.estimation_failure_rate)) {
    log2_estimate += 2.0;
  }
  return log2_estimate;
}

GroverResult grover_find_violated(const LpInstance& inst, std::span<const double> x, double eps,
                                  double p, const QueryCostModel& model, QueryLedger& ledger,
                                  Rng& rng, std::size_t iteration) {
  if (x.size() != inst.d()) throw ContractError("point dimension differs from instance");
  ledger.charge_quantum(kGroverRecord, iteration, grover_units(inst.n(), p, model), 1);
  if (model.record_actual) ledger.charge_rows(inst.n());
  std::vector<std::size_t> violated;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (violates(inst, i, x, eps)) violated.push_back(i);
  }
  if (violated.empty()) return {};
  if (model.grover_failure_rate > 0.0 && rng.bernoulli(model.grover_failure_rate)) return {};
  return {violated[rng.below(violated.size())]};
}

double failure_probability(std::size_t n) {
  const double nn = static_cast<double>(n);
  const double log_n = std::max(std::log(nn), std::log(2.0));
  return 1.0 / (32.0 * nn * log_n) / (100.0 * nn * nn);
}

double quantum_mpc_sample_size(std::size_t d, double eps, std::size_t r_p) {
  const double inner = std::max(std::log(static_cast<double>(r_p) / eps), 1.0);
  return std::max(6.0, 6.0 * static_cast<double>(d) / eps * std::log(inner / eps));
}

namespace {

using SampledSolver = std::function<std::optional<std::vector<double>>(std::span<const std::size_t>)>;

struct CountLoop {
  const LpInstance& lp;
  double slack;
  double s;
  std::size_t iterations;
  double mu;
};

// Algorithms 1-3 share this loop: estimate the weight norm, sample against
// it, solve the sampled relaxation, double the weight of every violated row.
// Returns nullopt when a sampled relaxation is infeasible.
std::optional<std::vector<std::vector<double>>> run_count_loop(
    const CountLoop& cfg, const SampledSolver& solve, const QueryCostModel& model, Rng& rng,
    QueryLedger& ledger, SolveStats& stats) {
  const std::size_t n = cfg.lp.n();
  const double p = failure_probability(n);
  QueryLedger scratch;
  QueryLedger& sim = model.record_actual ? ledger : scratch;
  WeightState ws(n);
  double log2_w_tilde = std::log2(static_cast<double>(n));
  std::vector<std::vector<double>> xs;
  stats.planned_iterations = cfg.iterations;
  stats.oracle_mu = cfg.mu;

  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    // Replaying the t-1 stored points costs at most t row queries per weight.
    const WeightOracle w = WeightOracle::from_counts(ws.counts(), t);
    log2_w_tilde = estimation_sum(w, log2_w_tilde, p, model, ledger, rng, t);
    stats.norm_ratios.push_back(std::exp2(w.log2_norm() - log2_w_tilde));
    const std::vector<std::size_t> rows =
        quantum_sampling(w, cfg.s, log2_w_tilde, p, model, ledger, rng, t);
    ledger.charge_rows(rows.size());
    stats.sample_sizes.push_back(rows.size());
    stats.max_sublp = std::max(stats.max_sublp, rows.size());
    stats.iterations = t;

    std::optional<std::vector<double>> x = solve(rows);
    if (!x) {
      stats.max_violation_count = ws.max_count();
      return std::nullopt;
    }
    ws.apply(violation_vector(cfg.lp, *x, cfg.slack, sim));
    xs.push_back(std::move(*x));
  }
  stats.max_violation_count = ws.max_count();
  return xs;
}

SampledSolver simplex_on(const LpInstance& inst) {
  return [&inst](std::span<const std::size_t> rows) -> std::optional<std::vector<double>> {
    SolveOutcome sol = simplex_solve(SubLp{&inst, {rows.begin(), rows.end()}});
    if (sol.status != Status::Optimal) return std::nullopt;
    return std::move(sol.x);
  };
}

SolveOutcome finish(SolveOutcome out, SolveStats stats, const QueryLedger& ledger) {
  out.stats = std::move(stats);
  out.stats.ledger = ledger.snapshot();
  return out;
}

}  // namespace

SolveOutcome quantum_clarkson(const LpInstance& inst, const QueryCostModel& model, Rng& rng,
                              QueryLedger& ledger) {
  inst.validate();
  const double d = static_cast<double>(inst.d());
  const CountLoop cfg{inst, 0.0, 6.0 * d * d, log_iterations(24.0 * d, inst.n()), 1.0 / (3.0 * d)};
  SolveStats stats;
  const auto xs = run_count_loop(cfg, simplex_on(inst), model, rng, ledger, stats);
  if (!xs) return finish(SolveOutcome::without_solution(Status::Infeasible), stats, ledger);

  const double p = failure_probability(inst.n());
  for (std::size_t k = 0; k < xs->size(); ++k) {
    const auto& x = (*xs)[k];
    if (!grover_find_violated(inst, x, 0.0, p, model, ledger, rng, k + 1).index) {
      return finish(SolveOutcome::with_solution(Status::Optimal, x, dot(inst.c, x)), stats,
                    ledger);
    }
  }
  return finish(SolveOutcome::without_solution(Status::Bottom), stats, ledger);
}

SolveOutcome quantum_mpc(const MpcInstance& mpc, double eps, const QueryCostModel& model,
                         Rng& rng, QueryLedger& ledger) {
  mpc.validate();
  if (!(eps > 0.0 && eps <= 1.0)) throw ContractError("eps must lie in (0, 1]");
  const std::size_t d = mpc.d();
  if (mpc.n_c() == 0) {
    return finish(SolveOutcome::with_solution(Status::Approximate, std::vector<double>(d), 0.0),
                  {}, ledger);
  }
  const LpInstance lp = covering_system(mpc);
  const CountLoop cfg{lp, 0.0, quantum_mpc_sample_size(d, eps, mpc.r_p),
                      log_iterations(24.0 / eps, mpc.n_c()), eps / 3.0};
  const SampledSolver solve =
      [&](std::span<const std::size_t> rows) -> std::optional<std::vector<double>> {
    const SolveOutcome inner = mpc_inner_solve(mpc.P, mpc.C.select_rows(rows), eps);
    if (inner.status != Status::Optimal) return std::nullopt;
    return discretize_mpc(*inner.x, eps, mpc.r_p);
  };
  SolveStats stats;
  const auto xs = run_count_loop(cfg, solve, model, rng, ledger, stats);
  if (!xs) return finish(SolveOutcome::without_solution(Status::Infeasible), stats, ledger);
  std::vector<double> x = detail::rescale_cover(mpc, detail::average(*xs, d), eps, stats);
  return finish(SolveOutcome::with_solution(Status::Approximate, std::move(x), 0.0), stats,
                ledger);
}

SolveOutcome quantum_lp_one_sided(const LpInstance& inst, double eps,
                                  const QueryCostModel& model, Rng& rng, QueryLedger& ledger) {
  inst.validate();
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  const double d = static_cast<double>(inst.d());
  const double v_max = compute_widths(inst).v_max;
  const bool trivial = v_max <= eps;
  const CountLoop cfg{inst, eps, trivial ? 6.0 * d : 6.0 * d * v_max / eps,
                      trivial ? 1 : log_iterations(24.0 * v_max / eps, inst.n()),
                      trivial ? 1.0 : eps / (3.0 * v_max)};
  SolveStats stats;
  const auto xs = run_count_loop(cfg, simplex_on(inst), model, rng, ledger, stats);
  if (!xs) return finish(SolveOutcome::without_solution(Status::Infeasible), stats, ledger);
  std::vector<double> x_bar = detail::average(*xs, inst.d());
  const double objective = dot(inst.c, x_bar);
  return finish(SolveOutcome::with_solution(Status::Approximate, std::move(x_bar), objective),
                stats, ledger);
}

SolveOutcome quantum_lp_two_sided(const LpInstance& inst, double eps,
                                  const QueryCostModel& model, Rng& rng, QueryLedger& ledger) {
  inst.validate();
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  const std::size_t n = inst.n();
  const double d = static_cast<double>(inst.d());
  const double rho = compute_widths(inst).rho;
  const bool trivial = rho <= eps;
  const double s = trivial ? 6.0 * d : 6.0 * d * rho / eps;
  const std::size_t iterations = trivial ? 1 : log_iterations(16.0 * rho / eps, n);
  const double p = failure_probability(n);
  const SampledSolver solve = simplex_on(inst);

  SolveStats stats;
  stats.planned_iterations = iterations;
  stats.oracle_mu = trivial ? 1.0 : eps / (3.0 * rho);
  // log2 w_i = (<A_i, sum x> - t b_i) / rho, kept incrementally.
  std::vector<double> log2_w(n, 0.0);
  std::vector<double> sum_x(inst.d(), 0.0);
  double log2_w_tilde = std::log2(static_cast<double>(n));
  const double scale = rho > 0.0 ? rho : 1.0;

  for (std::size_t t = 1; t <= iterations; ++t) {
    const WeightOracle w = WeightOracle::from_log2(log2_w, 1);
    // Weights may halve since the last estimate, so start from half of it.
    log2_w_tilde = estimation_sum(w, log2_w_tilde - 1.0, p, model, ledger, rng, t);
    stats.norm_ratios.push_back(std::exp2(w.log2_norm() - log2_w_tilde));
    const std::vector<std::size_t> rows =
        quantum_sampling(w, s, log2_w_tilde, p, model, ledger, rng, t);
    ledger.charge_rows(rows.size());
    stats.sample_sizes.push_back(rows.size());
    stats.max_sublp = std::max(stats.max_sublp, rows.size());
    stats.iterations = t;

    std::optional<std::vector<double>> x = solve(rows);
    if (!x) return finish(SolveOutcome::without_solution(Status::Infeasible), stats, ledger);
    if (model.record_actual) ledger.charge_rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double step = (dot(inst.A.row(i), *x) - inst.b[i]) / scale;
      const double ratio = std::exp2(step);
      stats.min_weight_ratio = std::min(stats.min_weight_ratio, ratio);
      stats.max_weight_ratio = std::max(stats.max_weight_ratio, ratio);
      log2_w[i] += step;
    }
    for (std::size_t j = 0; j < sum_x.size(); ++j) sum_x[j] += (*x)[j];
  }
  for (double& v : sum_x) v /= static_cast<double>(iterations);
  const double objective = dot(inst.c, sum_x);
  return finish(SolveOutcome::with_solution(Status::Approximate, std::move(sum_x), objective),
                stats, ledger);
}

}  // namespace lpsparse
