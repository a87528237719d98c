#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lpsparse/matrix.hpp"

namespace lpsparse {

struct BoxDomain {
  std::vector<double> lower;
  std::vector<double> upper;

  static BoxDomain uniform(std::size_t d, double lo, double hi);
  std::size_t size() const noexcept { return lower.size(); }

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;
};

// Constraints enforced in every sub-problem and never sampled.
struct RetainedBlock {
  Matrix A;
  std::vector<double> b;

  friend bool operator==(const RetainedBlock&, const RetainedBlock&) = default;
};

// max <c, x>  s.t.  A x <= b,  x in domain,  retained.A x <= retained.b
struct LpInstance {
  Matrix A;
  std::vector<double> b;
  std::vector<double> c;
  BoxDomain domain;
  std::optional<RetainedBlock> retained;

  std::size_t n() const noexcept { return A.rows(); }
  std::size_t d() const noexcept { return A.cols(); }

  // Throws ContractError on any broken invariant.
  void validate() const;

  friend bool operator==(const LpInstance&, const LpInstance&) = default;
};

// Find x in [0,1]^d with P x <= 1 and C x >= 1. Entries of P and C lie in [0,1].
struct MpcInstance {
  Matrix P;
  Matrix C;
  std::size_t r_p = 0;
  std::size_t r_c = 0;

  std::size_t n_p() const noexcept { return P.rows(); }
  std::size_t n_c() const noexcept { return C.rows(); }
  std::size_t d() const noexcept { return C.cols() != 0 ? C.cols() : P.cols(); }

  void validate() const;

  // Builds an instance and fills r_p and r_c from the matrices.
  static MpcInstance from_matrices(Matrix P, Matrix C);

  friend bool operator==(const MpcInstance&, const MpcInstance&) = default;
};

// Maximum number of nonzeros in any row.
std::size_t row_sparsity(const Matrix& m);

// The covering rows as a general LP over [0,1]^d: -C x <= -1, with the
// packing rows kept as the retained block and a zero objective.
LpInstance covering_system(const MpcInstance& mpc);

}  // namespace lpsparse
