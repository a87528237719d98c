#include "lpsparse/violation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpsparse/errors.hpp"

namespace lpsparse {

std::size_t ViolationVector::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

bool violates(const LpInstance& inst, std::size_t row, std::span<const double> x, double eps) {
  return dot(inst.A.row(row), x) - inst.b[row] - eps > kViolationTolerance;
}

ViolationVector violation_vector(const LpInstance& inst, std::span<const double> x, double eps,
                                 QueryLedger& ledger) {
  if (x.size() != inst.d()) {
    throw ContractError("point has " + std::to_string(x.size()) + " coordinates, instance has " +
                        std::to_string(inst.d()));
  }
  if (!std::isfinite(eps)) throw ContractError("slack must be finite");
  ViolationVector v;
  v.slack = eps;
  v.bits.resize(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) v.bits[i] = violates(inst, i, x, eps) ? 1 : 0;
  ledger.charge_rows(inst.n());
  return v;
}

Widths compute_widths(const LpInstance& inst) {
  const auto& lo = inst.domain.lower;
  const auto& hi = inst.domain.upper;
  if (lo.size() != inst.d() || hi.size() != inst.d()) {
    throw ContractError("domain bounds must have d entries");
  }
  Widths w;
  w.v_max = -HUGE_VAL;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    double top = -inst.b[i];
    double bottom = -inst.b[i];
    auto a = inst.A.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) {
      top += std::max(a[j] * hi[j], a[j] * lo[j]);
      bottom += std::min(a[j] * hi[j], a[j] * lo[j]);
    }
    w.v_max = std::max(w.v_max, top);
    w.rho = std::max({w.rho, std::abs(top), std::abs(bottom)});
  }
  return w;
}

double max_violation(const LpInstance& inst, std::span<const double> x) {
  double worst = -HUGE_VAL;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    worst = std::max(worst, dot(inst.A.row(i), x) - inst.b[i]);
  }
  return worst;
}

}  // namespace lpsparse
