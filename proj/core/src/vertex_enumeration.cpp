#include "lpsparse/vertex_enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "lpsparse/errors.hpp"

namespace lpsparse {
namespace {

constexpr double kSingular = 1e-12;
constexpr double kFeasible = 1e-9;

// Gauss-Jordan with full row pivoting on an augmented d x (d+1) system.
bool solve_square(std::vector<double> aug, std::size_t d, std::vector<double>& x) {
  const std::size_t w = d + 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::fabs(aug[r * w + col]) > std::fabs(aug[piv * w + col])) piv = r;
    }
    if (std::fabs(aug[piv * w + col]) < kSingular) return false;
    for (std::size_t j = 0; j < w; ++j) std::swap(aug[col * w + j], aug[piv * w + j]);
    const double inv = 1.0 / aug[col * w + col];
    for (std::size_t j = col; j < w; ++j) aug[col * w + j] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = aug[r * w + col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < w; ++j) aug[r * w + j] -= f * aug[col * w + j];
    }
  }
  x.resize(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = aug[i * w + d];
  return true;
}

}  // namespace

std::uint64_t binomial_coefficient(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = m - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t reduced = result / g;
    const std::uint64_t denom = i / g;
    if (reduced > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = reduced * num / denom;
  }
  return result;
}

SolveOutcome vertex_enumeration_solve(const Matrix& G, std::span<const double> h,
                                      std::span<const double> c, const BoxDomain& box,
                                      std::uint64_t max_combinations) {
  const std::size_t d = c.size();
  const std::size_t m_rows = G.rows();
  const std::size_t m = m_rows + 2 * d;
  if (binomial_coefficient(m, d) > max_combinations) {
    throw ContractError("vertex enumeration over " + std::to_string(m) +
                        " constraints exceeds the combination budget");
  }

  // Full constraint list: rows, then upper bounds, then lower bounds.
  std::vector<double> coef(m * d, 0.0);
  std::vector<double> rhs(m);
  for (std::size_t i = 0; i < m_rows; ++i) {
    for (std::size_t j = 0; j < d; ++j) coef[i * d + j] = G(i, j);
    rhs[i] = h[i];
  }
  for (std::size_t j = 0; j < d; ++j) {
    coef[(m_rows + j) * d + j] = 1.0;
    rhs[m_rows + j] = box.upper[j];
    coef[(m_rows + d + j) * d + j] = -1.0;
    rhs[m_rows + d + j] = -box.lower[j];
  }

  std::vector<std::size_t> pick(d);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<double> aug((d) * (d + 1));
  std::vector<double> x;
  std::optional<std::vector<double>> best;
  double best_value = -HUGE_VAL;

  while (true) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t j = 0; j < d; ++j) aug[r * (d + 1) + j] = coef[pick[r] * d + j];
      aug[r * (d + 1) + d] = rhs[pick[r]];
    }
    if (solve_square(aug, d, x)) {
      bool feasible = true;
      for (std::size_t k = 0; k < m && feasible; ++k) {
        double act = 0.0;
        for (std::size_t j = 0; j < d; ++j) act += coef[k * d + j] * x[j];
        feasible = act - rhs[k] <= kFeasible;
      }
      if (feasible) {
        double value = 0.0;
        for (std::size_t j = 0; j < d; ++j) value += c[j] * x[j];
        if (value > best_value) {
          best_value = value;
          best = x;
        }
      }
    }
    // Next d-subset in lexicographic order.
    std::size_t pos = d;
    while (pos > 0 && pick[pos - 1] == m - d + pos - 1) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t r = pos; r < d; ++r) pick[r] = pick[r - 1] + 1;
  }

  if (!best) return SolveOutcome::without_solution(Status::Infeasible);
  return SolveOutcome::with_solution(Status::Optimal, std::move(*best), best_value);
}

SolveOutcome vertex_enumeration_solve(const SubLp& sub, std::uint64_t max_combinations) {
  if (sub.instance == nullptr) throw ContractError("sub-problem has no instance");
  const LpInstance& inst = *sub.instance;
  Matrix G(0, inst.d());
  std::vector<double> h;
  for (std::size_t i : sub.rows) {
    G.append_row(inst.A.row(i));
    h.push_back(inst.b[i]);
  }
  if (inst.retained) {
    for (std::size_t i = 0; i < inst.retained->A.rows(); ++i) {
      G.append_row(inst.retained->A.row(i));
      h.push_back(inst.retained->b[i]);
    }
  }
  return vertex_enumeration_solve(G, h, inst.c, inst.domain, max_combinations);
}

bool certify_optimal(const SubLp& sub, std::span<const double> x, double tol) {
  if (sub.instance == nullptr) throw ContractError("sub-problem has no instance");
  const LpInstance& inst = *sub.instance;
  const std::size_t d = inst.d();
  if (x.size() != d) return false;

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i : sub.rows) {
    rows.emplace_back(inst.A.row(i).begin(), inst.A.row(i).end());
    rhs.push_back(inst.b[i]);
  }
  if (inst.retained) {
    for (std::size_t i = 0; i < inst.retained->A.rows(); ++i) {
      rows.emplace_back(inst.retained->A.row(i).begin(), inst.retained->A.row(i).end());
      rhs.push_back(inst.retained->b[i]);
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> up(d, 0.0);
    std::vector<double> down(d, 0.0);
    up[j] = 1.0;
    down[j] = -1.0;
    rows.push_back(up);
    rhs.push_back(inst.domain.upper[j]);
    rows.push_back(down);
    rhs.push_back(-inst.domain.lower[j]);
  }

  std::vector<std::size_t> tight;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    double act = 0.0;
    for (std::size_t j = 0; j < d; ++j) act += rows[k][j] * x[j];
    if (act - rhs[k] > tol) return false;
    if (std::fabs(act - rhs[k]) <= 1e-7) tight.push_back(k);
  }

  double c_scale = 1.0;
  for (double v : inst.c) c_scale = std::max(c_scale, std::fabs(v));

  // Search the tight set for a subset whose multipliers are nonnegative.
  const std::size_t k = std::min(tight.size(), d);
  if (k == 0) {
    for (double v : inst.c)
      if (std::fabs(v) > tol) return false;
    return true;
  }
  if (binomial_coefficient(tight.size(), k) > 100'000) return false;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<double> aug(k * (k + 1));
  std::vector<double> lambda;
  while (true) {
    // Normal equations (A_S A_S^T) lambda = A_S c.
    for (std::size_t r = 0; r < k; ++r) {
      const auto& ar = rows[tight[pick[r]]];
      for (std::size_t q = 0; q < k; ++q) {
        const auto& aq = rows[tight[pick[q]]];
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += ar[j] * aq[j];
        aug[r * (k + 1) + q] = s;
      }
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += ar[j] * inst.c[j];
      aug[r * (k + 1) + k] = s;
    }
    if (solve_square(aug, k, lambda)) {
      bool ok = true;
      for (double l : lambda) ok = ok && l >= -tol;
      for (std::size_t j = 0; j < d && ok; ++j) {
        double s = inst.c[j];
        for (std::size_t r = 0; r < k; ++r) s -= lambda[r] * rows[tight[pick[r]]][j];
        ok = std::fabs(s) <= tol * c_scale * 10.0;
      }
      if (ok) return true;
    }
    std::size_t pos = k;
    while (pos > 0 && pick[pos - 1] == tight.size() - k + pos - 1) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t r = pos; r < k; ++r) pick[r] = pick[r - 1] + 1;
  }
  return false;
}

}  // namespace lpsparse
