#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lpsparse::detail {

// Row-major square system with partial-pivoting LU, refactored at every pivot.
// d stays small, so the O(d^3) refactor is cheaper than maintaining updates.
class DenseLu {
 public:
  explicit DenseLu(std::size_t d) : d_(d), lu_(d * d), perm_(d) {}

  bool factor(const std::vector<double>& m) {
    lu_ = m;
    for (std::size_t i = 0; i < d_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < d_; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < d_; ++i) {
        if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
      }
      if (std::abs(at(piv, k)) < 1e-300) return false;
      if (piv != k) {
        for (std::size_t j = 0; j < d_; ++j) std::swap(at(k, j), at(piv, j));
        std::swap(perm_[k], perm_[piv]);
      }
      for (std::size_t i = k + 1; i < d_; ++i) {
        const double f = at(i, k) / at(k, k);
        at(i, k) = f;
        for (std::size_t j = k + 1; j < d_; ++j) at(i, j) -= f * at(k, j);
      }
    }
    return true;
  }

  // M y = rhs
  std::vector<double> solve(std::span<const double> rhs) const {
    std::vector<double> y(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      double s = rhs[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t i = d_; i-- > 0;) {
      double s = y[i];
      for (std::size_t j = i + 1; j < d_; ++j) s -= at(i, j) * y[j];
      y[i] = s / at(i, i);
    }
    return y;
  }

  // M^T y = rhs
  std::vector<double> solve_transposed(std::span<const double> rhs) const {
    std::vector<double> z(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      double s = rhs[i];
      for (std::size_t j = 0; j < i; ++j) s -= at(j, i) * z[j];
      z[i] = s / at(i, i);
    }
    for (std::size_t i = d_; i-- > 0;) {
      double s = z[i];
      for (std::size_t j = i + 1; j < d_; ++j) s -= at(j, i) * z[j];
      z[i] = s;
    }
    std::vector<double> y(d_);
    for (std::size_t i = 0; i < d_; ++i) y[perm_[i]] = z[i];
    return y;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return lu_[i * d_ + j]; }
  double at(std::size_t i, std::size_t j) const { return lu_[i * d_ + j]; }

  std::size_t d_;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
};

}  // namespace lpsparse::detail
