#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace lpsparse {

// One modeled quantum charge. `charge` is already multiplied by `row_cost`,
// the number of row queries a single weight-oracle evaluation costs.
// `procedure` must refer to storage with static lifetime.
struct LedgerRecord {
  std::string_view procedure;
  std::size_t iteration = 0;
  std::uint64_t charge = 0;
  std::uint64_t row_cost = 0;
};

struct LedgerSnapshot {
  std::uint64_t classical_row_reads = 0;
  std::uint64_t quantum_query_charge = 0;
  std::size_t records = 0;
};

// Per-run accounting of row accesses. Counters only grow. Not thread-safe:
// every run owns its ledger.
class QueryLedger {
 public:
  void charge_rows(std::uint64_t rows) noexcept { classical_row_reads_ += rows; }

  // Adds units * row_cost to the quantum counter and logs one record.
  void charge_quantum(std::string_view procedure, std::size_t iteration, std::uint64_t units,
                      std::uint64_t row_cost);

  std::uint64_t classical_row_reads() const noexcept { return classical_row_reads_; }
  std::uint64_t quantum_query_charge() const noexcept { return quantum_query_charge_; }
  const std::vector<LedgerRecord>& records() const noexcept { return records_; }

  LedgerSnapshot snapshot() const noexcept {
    return {classical_row_reads_, quantum_query_charge_, records_.size()};
  }

 private:
  std::uint64_t classical_row_reads_ = 0;
  std::uint64_t quantum_query_charge_ = 0;
  std::vector<LedgerRecord> records_;
};

}  // namespace lpsparse
