#include "lpsparse/ledger.hpp"

namespace lpsparse {

void QueryLedger::charge_quantum(std::string_view procedure, std::size_t iteration,
                                 std::uint64_t units, std::uint64_t row_cost) {
  const std::uint64_t charge = units * row_cost;
  quantum_query_charge_ += charge;
  records_.push_back({procedure, iteration, charge, row_cost});
}

}  // namespace lpsparse
