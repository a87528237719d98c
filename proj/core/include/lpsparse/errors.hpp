#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpsparse {

// Caller broke a documented precondition (dimension mismatch, bad parameter).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed instance file. `line` is 1-based, 0 when not attributable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::string field);

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Internal solver failure, e.g. the pivot cap of the simplex was hit.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A low-violation oracle exhausted its sample-solve-verify retry budget.
class RetryBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An oracle handed the MWU driver a point whose weighted violation exceeds
// the promised bound.
class OracleContractBroken : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The exact classical solver finished its iteration budget without a single
// fully feasible iterate.
class NoFeasibleIterate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The per-constraint violation counts exceeded the multiplicative-weights
// bound even though every oracle reply met its contract.
class MwuBoundViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpsparse
