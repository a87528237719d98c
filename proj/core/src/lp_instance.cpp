#include "lpsparse/lp_instance.hpp"

#include <cmath>
#include <string>

#include "lpsparse/errors.hpp"

namespace lpsparse {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractError(what);
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void check_unit_entries(const Matrix& m, const char* name) {
  for (double x : m.data()) {
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0,
            std::string(name) + " entries must lie in [0, 1]");
  }
}

}  // namespace

BoxDomain BoxDomain::uniform(std::size_t d, double lo, double hi) {
  return {std::vector<double>(d, lo), std::vector<double>(d, hi)};
}

void LpInstance::validate() const {
  require(n() >= 1, "instance needs at least one row");
  require(d() >= 1, "instance needs at least one column");
  require(b.size() == n(), "b has " + std::to_string(b.size()) + " entries, A has " +
                               std::to_string(n()) + " rows");
  require(c.size() == d(), "c has " + std::to_string(c.size()) + " entries, A has " +
                               std::to_string(d()) + " columns");
  require(domain.lower.size() == d() && domain.upper.size() == d(),
          "domain bounds must have d entries");
  require(all_finite(A.data()) && all_finite(b) && all_finite(c), "non-finite coefficient");
  require(all_finite(domain.lower) && all_finite(domain.upper), "non-finite domain bound");
  for (std::size_t j = 0; j < d(); ++j) {
    require(domain.lower[j] <= domain.upper[j],
            "domain lower exceeds upper at coordinate " + std::to_string(j));
  }
  if (retained) {
    require(retained->A.cols() == d() || retained->A.rows() == 0,
            "retained block must have d columns");
    require(retained->b.size() == retained->A.rows(), "retained rhs length mismatch");
    require(all_finite(retained->A.data()) && all_finite(retained->b),
            "non-finite retained coefficient");
  }
}

void MpcInstance::validate() const {
  require(d() >= 1, "packing/covering instance needs at least one column");
  require(P.rows() == 0 || P.cols() == d(), "P and C column counts differ");
  require(C.rows() == 0 || C.cols() == d(), "P and C column counts differ");
  check_unit_entries(P, "P");
  check_unit_entries(C, "C");
  require(r_p == row_sparsity(P), "r_p does not match the sparsity of P");
  require(r_c == row_sparsity(C), "r_c does not match the sparsity of C");
}

MpcInstance MpcInstance::from_matrices(Matrix P, Matrix C) {
  MpcInstance mpc;
  mpc.r_p = row_sparsity(P);
  mpc.r_c = row_sparsity(C);
  mpc.P = std::move(P);
  mpc.C = std::move(C);
  return mpc;
}

std::size_t row_sparsity(const Matrix& m) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t nz = 0;
    for (double v : m.row(i)) nz += v != 0.0 ? 1 : 0;
    if (nz > best) best = nz;
  }
  return best;
}

LpInstance covering_system(const MpcInstance& mpc) {
  const std::size_t d = mpc.d();
  LpInstance inst;
  inst.A = Matrix(mpc.n_c(), d);
  for (std::size_t i = 0; i < mpc.n_c(); ++i) {
    auto src = mpc.C.row(i);
    auto dst = inst.A.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = -src[j];
  }
  inst.b.assign(mpc.n_c(), -1.0);
  inst.c.assign(d, 0.0);
  inst.domain = BoxDomain::uniform(d, 0.0, 1.0);
  if (mpc.n_p() > 0) inst.retained = RetainedBlock{mpc.P, std::vector<double>(mpc.n_p(), 1.0)};
  return inst;
}

}  // namespace lpsparse
