#pragma once

// Emptiness of the violation hypergraph H_f. A hyperedge is {x, y^1..y^t}
// with f(x) = 0, every f(y^i) = 1 and ZERO(x) inside the union of the
// ZERO(y^i); t = 0 is allowed only for x = 1^n.
//
// Equivalence used here: if f(1^n) = 0 then {1^n} is a hyperedge. Otherwise
// every 0-point x has ZERO(x) nonempty, and a hyperedge on x exists iff
// ZERO(x) is inside U = union of ZERO(y) over all 1-points y. (If such a
// family exists its union lies in U; conversely, taking for each i in ZERO(x)
// one 1-point y with y_i = 0 gives a covering family.)

#include <cstdint>
#include <optional>
#include <vector>

#include "subcube/function.hpp"

namespace subcube {

inline constexpr std::size_t kMaxHypergraphDim = 20;

struct HyperedgeWitness {
  ZeroSet x;
  std::vector<ZeroSet> ys;  // empty iff x = 1^n
};

struct HypergraphCheck {
  bool has_violation = false;
  std::optional<HyperedgeWitness> witness;
};

namespace detail {

// f over the whole cube, indexed by zero mask.
inline std::vector<bool> values_by_zero_mask(const FunctionSpec& f) {
  const std::size_t n = f.n();
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<bool> out(size);
  if (const auto* tt = f.as<TruthTable>()) {
    // bits are indexed by the ones mask
    for (std::uint64_t z = 0; z < size; ++z) out[z] = tt->bits[(size - 1) & ~z];
    return out;
  }
  for (std::uint64_t z = 0; z < size; ++z) out[z] = f.eval(ZeroSet::from_mask(n, z));
  return out;
}

}  // namespace detail

inline HypergraphCheck hypergraph_has_violation(const FunctionSpec& f) {
  const std::size_t n = f.n();
  if (n > kMaxHypergraphDim) throw Error("hypergraph sweep limited to n <= 20");
  const auto value = detail::values_by_zero_mask(f);
  const std::uint64_t size = std::uint64_t{1} << n;
  HypergraphCheck out;
  if (!value[0]) {
    out.has_violation = true;
    out.witness = HyperedgeWitness{ZeroSet::all_ones(n), {}};
    return out;
  }
  std::uint64_t U = 0;
  for (std::uint64_t z = 0; z < size; ++z)
    if (value[z]) U |= z;
  for (std::uint64_t z = 1; z < size; ++z) {
    if (value[z] || (z & ~U) != 0) continue;
    HyperedgeWitness w{ZeroSet::from_mask(n, z), {}};
    std::uint64_t covered = 0;
    for (std::uint64_t y = 0; y < size && (z & ~covered) != 0; ++y) {
      if (value[y] && (y & z & ~covered) != 0) {
        w.ys.push_back(ZeroSet::from_mask(n, y));
        covered |= y;
      }
    }
    out.has_violation = true;
    out.witness = std::move(w);
    return out;
  }
  return out;
}

}  // namespace subcube
