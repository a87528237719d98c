#include "lpsparse/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpsparse/errors.hpp"
#include "lpsparse/mwu.hpp"
#include "lpsparse/oracles.hpp"
#include "lpsparse/simplex.hpp"
#include "lpsparse/violation.hpp"
#include "solver_common.hpp"

namespace lpsparse {
namespace {

void record_run(SolveStats& stats, const FrameworkResult& run, std::size_t planned, double mu,
                const QueryLedger& ledger) {
  stats.iterations = run.solutions.xs.size();
  stats.planned_iterations = planned;
  stats.max_sublp = run.max_sample_size;
  stats.sample_sizes = run.sample_sizes;
  stats.oracle_rounds = run.oracle_rounds;
  stats.oracle_mu = mu;
  stats.max_violation_count = run.weights.max_count();
  stats.ledger = ledger.snapshot();
}

SolveOutcome infeasible_outcome(const FrameworkResult& run, std::size_t planned, double mu,
                                const QueryLedger& ledger) {
  SolveOutcome out = SolveOutcome::without_solution(Status::Infeasible);
  record_run(out.stats, run, planned, mu, ledger);
  return out;
}

}  // namespace

std::size_t log_iterations(double factor, std::size_t n) {
  const double t = std::ceil(factor * std::log(static_cast<double>(n)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(t, 1.0)));
}

SolveOutcome clarkson_solve(const LpInstance& inst, Rng& rng, QueryLedger& ledger) {
  inst.validate();
  const double d = static_cast<double>(inst.d());
  FrameworkOptions options;
  options.eps = 0.0;
  options.oracle_mu = 1.0 / (3.0 * d);
  options.iterations = log_iterations(24.0 * d, inst.n());
  options.stop_when = [](const OracleReply& r) { return r.v.none(); };

  const FrameworkResult run = framework_run(
      inst.n(),
      [&](std::span<const double> p) {
        return exact_lvo(inst, p, options.oracle_mu, 0.0, rng, ledger);
      },
      options);
  if (run.infeasible) return infeasible_outcome(run, options.iterations, options.oracle_mu, ledger);
  if (!run.stopped_early) {
    throw NoFeasibleIterate("no feasible iterate after " + std::to_string(options.iterations) +
                            " iterations");
  }
  const std::vector<double>& x = run.solutions.xs.back();
  SolveOutcome out = SolveOutcome::with_solution(Status::Optimal, x, dot(inst.c, x));
  record_run(out.stats, run, options.iterations, options.oracle_mu, ledger);
  return out;
}

SolveOutcome low_precision_solve(const LpInstance& inst, double eps, Rng& rng,
                                 QueryLedger& ledger) {
  inst.validate();
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  const double v_max = compute_widths(inst).v_max;
  FrameworkOptions options;
  options.eps = eps / 2.0;
  if (v_max <= eps) {
    // Every box point is within eps of feasible; one relaxation optimum does.
    options.oracle_mu = 1.0;
    options.iterations = 1;
  } else {
    options.oracle_mu = eps / (6.0 * v_max);
    options.iterations = log_iterations(24.0 * v_max / eps, inst.n());
  }

  const FrameworkResult run = framework_run(
      inst.n(),
      [&](std::span<const double> p) {
        return exact_lvo(inst, p, options.oracle_mu, options.eps, rng, ledger);
      },
      options);
  if (run.infeasible) return infeasible_outcome(run, options.iterations, options.oracle_mu, ledger);
  std::vector<double> x_bar = detail::average(run.solutions.xs, inst.d());
  const double objective = dot(inst.c, x_bar);
  SolveOutcome out = SolveOutcome::with_solution(Status::Approximate, std::move(x_bar), objective);
  record_run(out.stats, run, options.iterations, options.oracle_mu, ledger);
  return out;
}

SolveOutcome mpc_solve(const MpcInstance& mpc, double eps, Rng& rng, QueryLedger& ledger) {
  mpc.validate();
  if (!(eps > 0.0 && eps <= 1.0)) throw ContractError("eps must lie in (0, 1]");
  const std::size_t d = mpc.d();
  if (mpc.n_c() == 0) {
    SolveOutcome out = SolveOutcome::with_solution(Status::Approximate, std::vector<double>(d), 0.0);
    out.stats.ledger = ledger.snapshot();
    return out;
  }
  const LpInstance lp = covering_system(mpc);
  const double levels = static_cast<double>(mpc_grid_levels(eps, mpc.r_p));
  const double output_count = std::pow(levels, static_cast<double>(d));

  // Covering violations are counted at slack 0 so the averaged point keeps
  // C x_bar >= 1 - eps; packing slack comes from the grid rounding instead.
  FrameworkOptions options;
  options.eps = 0.0;
  options.oracle_mu = eps / 3.0;
  options.iterations = log_iterations(24.0 / eps, mpc.n_c());

  const SubsetSolver solver =
      [&](std::span<const std::size_t> rows) -> std::optional<std::vector<double>> {
    const SolveOutcome inner = mpc_inner_solve(mpc.P, mpc.C.select_rows(rows), eps);
    if (inner.status != Status::Optimal) return std::nullopt;
    return discretize_mpc(*inner.x, eps, mpc.r_p);
  };
  const FrameworkResult run = framework_run(
      mpc.n_c(),
      [&](std::span<const double> p) {
        return approx_lvo(lp, p, options.oracle_mu, 0.0, solver, output_count, rng, ledger);
      },
      options);
  if (run.infeasible) return infeasible_outcome(run, options.iterations, options.oracle_mu, ledger);

  SolveOutcome out = SolveOutcome::with_solution(Status::Approximate, {}, 0.0);
  out.x = detail::rescale_cover(mpc, detail::average(run.solutions.xs, d), eps, out.stats);
  record_run(out.stats, run, options.iterations, options.oracle_mu, ledger);
  return out;
}

}  // namespace lpsparse
