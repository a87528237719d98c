#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lpsparse/lp_instance.hpp"

namespace lpsparse {

enum class InstanceKind {
  FeasibleNondegenerate,
  Infeasible,
  Covering,
  Packing,
  Mixed,
  MixedInfeasible,
};

std::string_view to_string(InstanceKind kind);
std::optional<InstanceKind> parse_instance_kind(std::string_view name);
bool is_mpc_kind(InstanceKind kind);

using Instance = std::variant<LpInstance, MpcInstance>;

// Deterministic in (kind, n, d, seed). For the mixed kinds n is the number of
// covering rows; the number of packing rows is min(4, n).
//
// feasible-nondegenerate: unit-norm rows around the interior point 0 in the
//   box [-2, 2]^d, b perturbed by U[0, 1e-6]; resampled until the optimum is
//   a simple vertex with every dual multiplier above 1e-7.
// infeasible: rows 0 and 1 are x_0 <= -1 and -x_0 <= -2; any further rows
//   are random feasible-looking rows.
// covering / packing: plain LPs over [0, 1]^d with a planted feasible point.
// mixed: packing/covering instance with a planted x* in [0, 1]^d.
// mixed-infeasible: mixed instance whose covering rows cannot all be met.
Instance generate_instance(InstanceKind kind, std::size_t n, std::size_t d, std::uint64_t seed);

// The planted point of a mixed instance, regenerated from the same inputs.
std::vector<double> planted_point(std::size_t n, std::size_t d, std::uint64_t seed);

// True when the optimum of `inst` is attained at a vertex with exactly d
// tight constraints and strictly positive dual multipliers (>= min_dual).
bool has_unique_optimal_basis(const LpInstance& inst, double min_dual = 1e-7);

}  // namespace lpsparse
