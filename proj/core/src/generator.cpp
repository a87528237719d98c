#include "lpsparse/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dense_lu.hpp"
#include "lpsparse/errors.hpp"
#include "lpsparse/random.hpp"
#include "lpsparse/simplex.hpp"
#include "lpsparse/violation.hpp"

namespace lpsparse {
namespace {

constexpr std::array<std::pair<InstanceKind, std::string_view>, 6> kKindNames{{
    {InstanceKind::FeasibleNondegenerate, "feasible-nondegenerate"},
    {InstanceKind::Infeasible, "infeasible"},
    {InstanceKind::Covering, "covering"},
    {InstanceKind::Packing, "packing"},
    {InstanceKind::Mixed, "mixed"},
    {InstanceKind::MixedInfeasible, "mixed-infeasible"},
}};

constexpr double kBoxRadius = 2.0;
constexpr double kNoise = 1e-6;
constexpr int kMaxAttempts = 1000;

std::vector<double> unit_normal(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  double norm = 0.0;
  while (norm < 1e-8) {
    for (double& x : v) x = rng.normal();
    norm = std::sqrt(dot(v, v));
  }
  for (double& x : v) x /= norm;
  return v;
}

// A random cutting row with the origin strictly inside.
void push_ball_row(LpInstance& inst, Rng& rng) {
  inst.A.append_row(unit_normal(rng, inst.d()));
  inst.b.push_back(rng.uniform(0.3, 1.0) + rng.uniform(0.0, kNoise));
}

LpInstance feasible_nondegenerate(std::size_t n, std::size_t d, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    LpInstance inst;
    inst.A = Matrix(0, d);
    inst.A.reserve_rows(n);
    for (std::size_t i = 0; i < n; ++i) push_ball_row(inst, rng);
    inst.c = unit_normal(rng, d);
    inst.domain = BoxDomain::uniform(d, -kBoxRadius, kBoxRadius);
    if (has_unique_optimal_basis(inst)) return inst;
  }
  throw SolverError("no nondegenerate instance after " + std::to_string(kMaxAttempts) +
                    " attempts");
}

LpInstance infeasible(std::size_t n, std::size_t d, Rng& rng) {
  LpInstance inst;
  inst.A = Matrix(0, d);
  inst.A.reserve_rows(n);
  std::vector<double> row(d, 0.0);
  row[0] = 1.0;
  inst.A.append_row(row);
  inst.b.push_back(-1.0);
  row[0] = -1.0;
  inst.A.append_row(row);
  inst.b.push_back(-2.0);
  while (inst.A.rows() < n) push_ball_row(inst, rng);
  inst.c = unit_normal(rng, d);
  inst.domain = BoxDomain::uniform(d, -kBoxRadius, kBoxRadius);
  return inst;
}

// Nonnegative row with random support of at least one column.
std::vector<double> sparse_unit_row(Rng& rng, std::size_t d) {
  std::vector<double> row(d, 0.0);
  while (std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; })) {
    for (double& v : row) v = rng.bernoulli(0.7) ? rng.uniform(0.05, 1.0) : 0.0;
  }
  return row;
}

LpInstance packing(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<double> planted(d);
  for (double& v : planted) v = rng.uniform(0.0, 1.0);
  LpInstance inst;
  inst.A = Matrix(0, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = sparse_unit_row(rng, d);
    inst.A.append_row(row);
    inst.b.push_back(dot(row, planted) + rng.uniform(0.05, 0.5));
  }
  inst.c.resize(d);
  for (double& v : inst.c) v = rng.uniform(0.0, 1.0);
  inst.domain = BoxDomain::uniform(d, 0.0, 1.0);
  return inst;
}

LpInstance covering(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<double> planted(d);
  for (double& v : planted) v = rng.uniform(0.5, 1.0);
  LpInstance inst;
  inst.A = Matrix(0, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = sparse_unit_row(rng, d);
    const double cover = dot(row, planted) * rng.uniform(0.5, 1.0);
    for (double& v : row) v = -v;
    inst.A.append_row(row);
    inst.b.push_back(-cover);
  }
  inst.c.resize(d);
  for (double& v : inst.c) v = -rng.uniform(0.0, 1.0);
  inst.domain = BoxDomain::uniform(d, 0.0, 1.0);
  return inst;
}

struct PlantedMpc {
  MpcInstance mpc;
  std::vector<double> planted;
};

// Raises a covering row until it reaches at least `target` at the planted point.
void lift_covering_row(std::vector<double>& row, std::span<const double> planted, double target) {
  const double now = dot(row, planted);
  for (double& v : row) v = std::min(1.0, v * target / now);
  std::size_t j = 0;
  while (dot(row, planted) < target && j < row.size()) {
    row[j] = 1.0;
    ++j;
  }
}

PlantedMpc mixed(std::size_t n, std::size_t d, Rng& rng) {
  PlantedMpc out;
  out.planted.resize(d);
  for (double& v : out.planted) v = rng.uniform(0.6, 1.0);
  double total = 0.0;
  for (double v : out.planted) total += v;
  if (total < 1.05) std::fill(out.planted.begin(), out.planted.end(), 1.0);

  const std::size_t n_p = std::min<std::size_t>(4, n);
  Matrix P(0, d);
  for (std::size_t i = 0; i < n_p; ++i) {
    auto row = sparse_unit_row(rng, d);
    const double scale = rng.uniform(0.6, 0.95) / dot(row, out.planted);
    for (double& v : row) v = std::min(1.0, v * scale);
    P.append_row(row);
  }
  Matrix C(0, d);
  C.reserve_rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = sparse_unit_row(rng, d);
    lift_covering_row(row, out.planted, rng.uniform(1.0, 1.25));
    C.append_row(row);
  }
  out.mpc = MpcInstance::from_matrices(std::move(P), std::move(C));
  return out;
}

// sum_j x_j <= 1 against covering rows with entries at most 0.6: every
// covering row caps at 0.6 on the packing simplex.
MpcInstance mixed_infeasible(std::size_t n, std::size_t d, Rng& rng) {
  const std::size_t n_p = std::min<std::size_t>(4, n);
  Matrix P(0, d);
  P.append_row(std::vector<double>(d, 1.0));
  while (P.rows() < n_p) P.append_row(sparse_unit_row(rng, d));
  Matrix C(0, d);
  C.reserve_rows(n);
  std::vector<double> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : row) v = rng.uniform(0.1, 0.6);
    C.append_row(row);
  }
  return MpcInstance::from_matrices(std::move(P), std::move(C));
}

void check_sizes(InstanceKind kind, std::size_t n, std::size_t d) {
  if (d < 1) throw ContractError("d must be at least 1");
  if (n < 1) throw ContractError("n must be at least 1");
  if (!is_mpc_kind(kind) && n < d) throw ContractError("n must be at least d");
  if (kind == InstanceKind::Infeasible && n < 2) {
    throw ContractError("infeasible instances need at least 2 rows");
  }
}

}  // namespace

std::string_view to_string(InstanceKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<InstanceKind> parse_instance_kind(std::string_view name) {
  for (const auto& [k, kind_name] : kKindNames)
    if (kind_name == name) return k;
  return std::nullopt;
}

bool is_mpc_kind(InstanceKind kind) {
  return kind == InstanceKind::Mixed || kind == InstanceKind::MixedInfeasible;
}

Instance generate_instance(InstanceKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
  check_sizes(kind, n, d);
  Rng rng(seed);
  switch (kind) {
    case InstanceKind::FeasibleNondegenerate: return feasible_nondegenerate(n, d, rng);
    case InstanceKind::Infeasible: return infeasible(n, d, rng);
    case InstanceKind::Covering: return covering(n, d, rng);
    case InstanceKind::Packing: return packing(n, d, rng);
    case InstanceKind::Mixed: return mixed(n, d, rng).mpc;
    case InstanceKind::MixedInfeasible: return mixed_infeasible(n, d, rng);
  }
  throw ContractError("unknown instance kind");
}

std::vector<double> planted_point(std::size_t n, std::size_t d, std::uint64_t seed) {
  check_sizes(InstanceKind::Mixed, n, d);
  Rng rng(seed);
  return mixed(n, d, rng).planted;
}

bool has_unique_optimal_basis(const LpInstance& inst, double min_dual) {
  SubLp all{&inst, {}};
  all.rows.resize(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) all.rows[i] = i;
  const SolveOutcome opt = simplex_solve(all);
  if (opt.status != Status::Optimal) return false;
  const auto& x = *opt.x;
  const std::size_t d = inst.d();

  // Tight rows and bounds; a simple vertex has exactly d of them.
  std::vector<double> basis;
  auto add_if_tight = [&](std::span<const double> a, double rhs) {
    if (std::abs(dot(a, x) - rhs) <= min_dual) basis.insert(basis.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i < inst.n(); ++i) add_if_tight(inst.A.row(i), inst.b[i]);
  if (inst.retained) {
    for (std::size_t i = 0; i < inst.retained->A.rows(); ++i) {
      add_if_tight(inst.retained->A.row(i), inst.retained->b[i]);
    }
  }
  std::vector<double> e(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    add_if_tight(e, inst.domain.upper[j]);
    e[j] = -1.0;
    add_if_tight(e, -inst.domain.lower[j]);
  }
  if (basis.size() != d * d) return false;

  detail::DenseLu lu(d);
  if (!lu.factor(basis)) return false;
  const std::vector<double> lambda = lu.solve_transposed(inst.c);
  return std::all_of(lambda.begin(), lambda.end(), [&](double l) { return l > min_dual; });
}

}  // namespace lpsparse
