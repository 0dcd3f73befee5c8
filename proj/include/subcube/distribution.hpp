#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "subcube/function.hpp"
#include "subcube/rational.hpp"
#include "subcube/zero_set.hpp"

namespace subcube {

struct WeightedPoint {
  ZeroSet point;
  Rational weight;
};

// Finite-support distribution over {0,1}^n with exact rational weights that
// sum to exactly 1. Points are pairwise distinct; weights strictly positive.
class FiniteDistribution {
 public:
  FiniteDistribution() = default;

  FiniteDistribution(std::size_t n, std::vector<WeightedPoint> entries)
      : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw Error("dimension must be positive");
    if (entries_.empty()) throw Error("empty distribution");
    Rational total = 0;
    std::set<ZeroSet> seen;
    for (const auto& e : entries_) {
      if (e.point.n() != n_) throw Error("distribution point has wrong dimension");
      if (e.weight <= 0) throw Error("distribution weights must be positive");
      if (!seen.insert(e.point).second) throw Error("distribution points must be distinct");
      total += e.weight;
    }
    if (total != 1) throw Error("distribution weights sum to " + format_rational(total) + ", not 1");
  }

  // Normalizes positive integer masses; merges nothing (points must differ).
  static FiniteDistribution from_masses(std::size_t n, const std::vector<ZeroSet>& points,
                                        const std::vector<std::uint64_t>& masses) {
    if (points.size() != masses.size()) throw Error("points/masses size mismatch");
    BigInt total = 0;
    for (auto m : masses) total += from_u64(m);
    std::vector<WeightedPoint> entries;
    for (std::size_t i = 0; i < points.size(); ++i) {
      Rational w(from_u64(masses[i]), total);
      w.canonicalize();
      entries.push_back({points[i], w});
    }
    return FiniteDistribution(n, std::move(entries));
  }

  static FiniteDistribution uniform(std::size_t n, const std::vector<ZeroSet>& points) {
    return from_masses(n, points, std::vector<std::uint64_t>(points.size(), 1));
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const std::vector<WeightedPoint>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

  [[nodiscard]] Rational weight_of(const ZeroSet& x) const {
    for (const auto& e : entries_)
      if (e.point == x) return e.weight;
    return 0;
  }

  // D(f^{-1}(b)).
  [[nodiscard]] Rational mass(const FunctionSpec& f, bool label) const {
    Rational total = 0;
    for (const auto& e : entries_)
      if (f.eval(e.point) == label) total += e.weight;
    return total;
  }

  // D^(C): every support point x moved to x^(C), weights preserved.
  [[nodiscard]] FiniteDistribution flipped(std::span<const Index> sorted_c) const {
    std::vector<WeightedPoint> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back({e.point.flipped(sorted_c), e.weight});
    return FiniteDistribution(n_, std::move(out));
  }

 private:
  std::size_t n_ = 0;
  std::vector<WeightedPoint> entries_;
};

inline std::pair<FunctionSpec, FiniteDistribution> flip_transform(const FunctionSpec& f,
                                                                  std::vector<Index> C,
                                                                  const FiniteDistribution& D) {
  if (f.n() != D.n()) throw Error("dimension mismatch between function and distribution");
  auto c = normalize_indices(std::move(C), f.n());
  auto dist = D.flipped(c);
  return {FunctionSpec::flipped(f, std::move(c)), std::move(dist)};
}

// dist_D(f, g).
inline Rational disagreement(const FunctionSpec& f, const FunctionSpec& g, const FiniteDistribution& D) {
  Rational total = 0;
  for (const auto& e : D.entries())
    if (f.eval(e.point) != g.eval(e.point)) total += e.weight;
  return total;
}

}  // namespace subcube
