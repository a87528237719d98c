#pragma once

#include <cstdint>

#include "lpsparse/simplex.hpp"

namespace lpsparse {

// Brute-force reference solver: tries every d-subset of the effective
// constraints as a vertex. Shares no code with the simplex and exists to
// check it. Throws ContractError when C(m, d) exceeds `max_combinations`.
SolveOutcome vertex_enumeration_solve(const SubLp& sub,
                                      std::uint64_t max_combinations = 1'000'000);

SolveOutcome vertex_enumeration_solve(const Matrix& G, std::span<const double> h,
                                      std::span<const double> c, const BoxDomain& box,
                                      std::uint64_t max_combinations = 1'000'000);

// Optimality certificate for instances too large to enumerate: x satisfies
// every effective constraint within `tol`, and c is a nonnegative combination
// of the constraints tight at x (least-squares multipliers, residual <= tol).
bool certify_optimal(const SubLp& sub, std::span<const double> x, double tol = 1e-9);

std::uint64_t binomial_coefficient(std::uint64_t m, std::uint64_t k);

}  // namespace lpsparse
