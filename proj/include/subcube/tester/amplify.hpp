#pragma once

#include <concepts>

#include "subcube/rng.hpp"
#include "subcube/tester/verdict.hpp"

namespace subcube {

inline constexpr std::uint64_t kDefaultAmplification = 11;  // 1 - 0.9^11 > 2/3

// Runs a one-sided tester k times on substreams rng.split(0..k-1) and
// rejects iff some run rejects. Runs should share one transcript so the
// returned counts are totals; stops at the first rejection.
template <typename Tester>
  requires std::invocable<Tester&, Rng&>
Verdict amplify(Tester&& tester, std::uint64_t k, const Rng& rng) {
  if (k == 0) throw Error("amplification needs k >= 1");
  Verdict v;
  for (std::uint64_t i = 0; i < k; ++i) {
    Rng sub = k == 1 ? rng : rng.split(i);
    v = tester(sub);
    if (!v.accepted || v.reason == Reason::budget_exhausted) return v;
  }
  return v;
}

}  // namespace subcube
