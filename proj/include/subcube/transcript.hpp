#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subcube/rational.hpp"
#include "subcube/zero_set.hpp"

namespace subcube {

// Raised by an oracle whose per-oracle budget is used up. Testers turn it
// into a forced accept.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted() : Error("oracle budget exhausted") {}
};

struct QueryLogEntry {
  ZeroSet query;
  bool answer = false;
  friend bool operator==(const QueryLogEntry&, const QueryLogEntry&) = default;
};

// Counts of black-box queries and samples consumed by one trial. When
// logging is on, every black-box query is appended to log, so
// log.size() == blackbox_count. Owned by exactly one trial at a time.
struct QueryTranscript {
  std::uint64_t blackbox_count = 0;
  std::uint64_t sample_count = 0;
  std::optional<std::uint64_t> blackbox_budget;
  std::optional<std::uint64_t> sample_budget;
  bool logging = false;
  std::vector<QueryLogEntry> log;

  void record_query(const ZeroSet& x, bool answer) {
    ++blackbox_count;
    if (logging) log.push_back({x, answer});
  }

  void check_query_budget() const {
    if (blackbox_budget && blackbox_count >= *blackbox_budget) throw BudgetExhausted();
  }

  // Charges k samples; on overflow consumes the remaining budget and throws.
  void charge_samples(std::uint64_t k) {
    if (sample_budget && sample_count + k > *sample_budget) {
      sample_count = std::max(sample_count, *sample_budget);
      throw BudgetExhausted();
    }
    sample_count += k;
  }
};

}  // namespace subcube
