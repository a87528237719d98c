#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpsparse/ledger.hpp"
#include "lpsparse/lp_instance.hpp"

namespace lpsparse {

// Absolute tolerance on <A_i, x> - b_i - eps before a row counts as violated.
inline constexpr double kViolationTolerance = 1e-9;

struct ViolationVector {
  std::vector<std::uint8_t> bits;
  double slack = 0.0;

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t count() const noexcept;
  bool none() const noexcept { return count() == 0; }
};

bool violates(const LpInstance& inst, std::size_t row, std::span<const double> x, double eps);

// Indicator of rows with <A_i, x> > b_i + eps + tolerance. Charges n row reads.
ViolationVector violation_vector(const LpInstance& inst, std::span<const double> x, double eps,
                                 QueryLedger& ledger);

struct Widths {
  double v_max = 0.0;  // largest one-sided violation over the box
  double rho = 0.0;    // largest |A_i x - b_i| over the box
};

Widths compute_widths(const LpInstance& inst);

// max_i (<A_i, x> - b_i), not charged.
double max_violation(const LpInstance& inst, std::span<const double> x);

}  // namespace lpsparse
