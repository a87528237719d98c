#include "lpsparse/outcome.hpp"

#include <utility>

namespace lpsparse {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "Optimal";
    case Status::Approximate: return "Approximate";
    case Status::Infeasible: return "Infeasible";
    case Status::Bottom: return "Bottom";
  }
  return "Unknown";
}

SolveOutcome SolveOutcome::with_solution(Status status, std::vector<double> x, double objective) {
  SolveOutcome out;
  out.status = status;
  out.x = std::move(x);
  out.objective = objective;
  return out;
}

SolveOutcome SolveOutcome::without_solution(Status status) {
  SolveOutcome out;
  out.status = status;
  return out;
}

}  // namespace lpsparse
