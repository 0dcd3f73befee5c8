#pragma once

#include <optional>
#include <vector>

#include "subcube/oracle.hpp"

namespace subcube {

// h(x): halves ZERO(x), keeping the first half that f maps to 0. Both halves
// are queried every round, so at most 2*ceil(log2 |ZERO(x)|) queries.
// Returns nil when neither half is a 0-point (impossible for MCONJ).
inline std::optional<Index> binary_search_representative(BlackBoxOracle& oracle, const ZeroSet& x) {
  std::vector<Index> Z = x.zeros();
  if (Z.empty()) return std::nullopt;
  const std::size_t n = x.n();
  while (Z.size() >= 2) {
    const auto half = static_cast<std::ptrdiff_t>((Z.size() + 1) / 2);
    std::vector<Index> Z0(Z.begin(), Z.begin() + half);
    std::vector<Index> Z1(Z.begin() + half, Z.end());
    const bool f0 = oracle.query(ZeroSet::from_sorted(n, Z0));
    const bool f1 = oracle.query(ZeroSet::from_sorted(n, Z1));
    if (!f0) Z = std::move(Z0);
    else if (!f1) Z = std::move(Z1);
    else return std::nullopt;
  }
  return Z.front();
}

}  // namespace subcube
