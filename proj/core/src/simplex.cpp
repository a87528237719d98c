#include "lpsparse/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dense_lu.hpp"
#include "lpsparse/errors.hpp"
#include "lpsparse/violation.hpp"

namespace lpsparse {
namespace {

constexpr double kFeasibilityTol = 1e-10;
constexpr double kPivotTol = 1e-12;

// Constraint k: rows of G first, then x_j <= upper_j, then -x_j <= -lower_j.
struct ConstraintSet {
  const Matrix& G;
  std::span<const double> h;
  const BoxDomain& box;
  std::size_t m;
  std::size_t d;

  std::size_t size() const { return m + 2 * d; }

  void coefficients(std::size_t k, std::span<double> out) const {
    if (k < m) {
      auto r = G.row(k);
      std::copy(r.begin(), r.end(), out.begin());
      return;
    }
    std::fill(out.begin(), out.end(), 0.0);
    if (k < m + d) {
      out[k - m] = 1.0;
    } else {
      out[k - m - d] = -1.0;
    }
  }

  double rhs(std::size_t k) const {
    if (k < m) return h[k];
    if (k < m + d) return box.upper[k - m];
    return -box.lower[k - m - d];
  }

  double activity(std::size_t k, std::span<const double> x) const {
    if (k < m) return dot(G.row(k), x);
    if (k < m + d) return x[k - m];
    return -x[k - m - d];
  }
};

}  // namespace

SolveOutcome solve_box_lp(const Matrix& G, std::span<const double> h, std::span<const double> c,
                          const BoxDomain& box) {
  const std::size_t d = c.size();
  if (box.size() != d || (G.rows() > 0 && G.cols() != d) || h.size() != G.rows()) {
    throw ContractError("sub-problem dimensions do not match");
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (box.lower[j] > box.upper[j]) return SolveOutcome::without_solution(Status::Infeasible);
  }
  const ConstraintSet cons{G, h, box, G.rows(), d};

  // Dual-feasible start: the box corner that maximizes <c, x>.
  std::vector<std::size_t> active(d);
  for (std::size_t j = 0; j < d; ++j) active[j] = c[j] >= 0.0 ? cons.m + j : cons.m + d + j;

  detail::DenseLu lu(d);
  std::vector<double> basis(d * d);
  std::vector<double> basis_rhs(d);
  std::vector<double> entering(d);
  const std::size_t pivot_cap = 50 * (cons.size() + 10) + 10000;

  for (std::size_t pivot = 0;; ++pivot) {
    if (pivot > pivot_cap) {
      throw SolverError("simplex pivot cap of " + std::to_string(pivot_cap) + " hit on a " +
                        std::to_string(cons.m) + "x" + std::to_string(d) + " sub-problem");
    }
    for (std::size_t i = 0; i < d; ++i) {
      cons.coefficients(active[i], std::span<double>(basis).subspan(i * d, d));
      basis_rhs[i] = cons.rhs(active[i]);
    }
    if (!lu.factor(basis)) throw SolverError("singular active set in simplex");
    std::vector<double> x = lu.solve(basis_rhs);

    std::size_t violated = cons.size();
    for (std::size_t k = 0; k < cons.size(); ++k) {
      if (cons.activity(k, x) - cons.rhs(k) > kFeasibilityTol) {
        violated = k;
        break;
      }
    }
    if (violated == cons.size()) {
      // Snap box-active coordinates so bounds hold exactly.
      for (std::size_t k : active) {
        if (k >= cons.m && k < cons.m + d) x[k - cons.m] = box.upper[k - cons.m];
        if (k >= cons.m + d) x[k - cons.m - d] = box.lower[k - cons.m - d];
      }
      const double objective = dot(c, x);
      return SolveOutcome::with_solution(Status::Optimal, std::move(x), objective);
    }

    // c = M^T lambda with lambda >= 0; entering row expressed as M^T alpha.
    std::vector<double> lambda = lu.solve_transposed(c);
    cons.coefficients(violated, entering);
    std::vector<double> alpha = lu.solve_transposed(entering);

    std::size_t leave = d;
    double best_ratio = HUGE_VAL;
    for (std::size_t i = 0; i < d; ++i) {
      if (alpha[i] <= kPivotTol) continue;
      const double ratio = std::max(lambda[i], 0.0) / alpha[i];
      const bool tie = leave < d && std::abs(ratio - best_ratio) <= 1e-15;
      if (leave == d || (!tie && ratio < best_ratio) || (tie && active[i] < active[leave])) {
        best_ratio = leave == d ? ratio : std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave == d) return SolveOutcome::without_solution(Status::Infeasible);
    active[leave] = violated;
  }
}

SolveOutcome simplex_solve(const SubLp& sub) {
  if (sub.instance == nullptr) throw ContractError("sub-problem has no instance");
  const LpInstance& inst = *sub.instance;
  const std::size_t d = inst.d();
  const std::size_t extra = inst.retained ? inst.retained->A.rows() : 0;
  Matrix G(0, d);
  G.reserve_rows(sub.rows.size() + extra);
  std::vector<double> h;
  h.reserve(sub.rows.size() + extra);
  for (std::size_t i : sub.rows) {
    if (i >= inst.n()) throw ContractError("sampled row index out of range");
    G.append_row(inst.A.row(i));
    h.push_back(inst.b[i]);
  }
  if (inst.retained) {
    for (std::size_t i = 0; i < extra; ++i) {
      G.append_row(inst.retained->A.row(i));
      h.push_back(inst.retained->b[i]);
    }
  }
  return solve_box_lp(G, h, inst.c, inst.domain);
}

SolveOutcome mpc_inner_solve(const Matrix& P, const Matrix& C_sampled, double eps) {
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  std::size_t d = P.rows() > 0 ? P.cols() : C_sampled.cols();
  if ((P.rows() > 0 && P.cols() != d) || (C_sampled.rows() > 0 && C_sampled.cols() != d)) {
    throw ContractError("P and C have different column counts");
  }
  if (d == 0) d = std::max(P.cols(), C_sampled.cols());
  if (C_sampled.rows() == 0) {
    return SolveOutcome::with_solution(Status::Optimal, std::vector<double>(d, 0.0), 0.0);
  }

  // Variables (x, t): P x <= 1, t - C_i x <= -1, maximize t in [-1, 0].
  Matrix G(0, d + 1);
  G.reserve_rows(P.rows() + C_sampled.rows());
  std::vector<double> h;
  std::vector<double> row(d + 1);
  for (std::size_t i = 0; i < P.rows(); ++i) {
    auto p = P.row(i);
    std::copy(p.begin(), p.end(), row.begin());
    row[d] = 0.0;
    G.append_row(row);
    h.push_back(1.0);
  }
  for (std::size_t i = 0; i < C_sampled.rows(); ++i) {
    auto cr = C_sampled.row(i);
    for (std::size_t j = 0; j < d; ++j) row[j] = -cr[j];
    row[d] = 1.0;
    G.append_row(row);
    h.push_back(-1.0);
  }
  std::vector<double> c(d + 1, 0.0);
  c[d] = 1.0;
  BoxDomain box = BoxDomain::uniform(d + 1, 0.0, 1.0);
  box.lower[d] = -1.0;
  box.upper[d] = 0.0;

  SolveOutcome lifted = solve_box_lp(G, h, c, box);
  if (lifted.status != Status::Optimal || *lifted.objective < -kViolationTolerance) {
    return SolveOutcome::without_solution(Status::Infeasible);
  }
  std::vector<double> x(lifted.x->begin(), lifted.x->begin() + static_cast<std::ptrdiff_t>(d));
  return SolveOutcome::with_solution(Status::Optimal, std::move(x), 0.0);
}

}  // namespace lpsparse
