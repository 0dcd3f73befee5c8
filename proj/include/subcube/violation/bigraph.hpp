#pragma once

#include <map>
#include <utility>
#include <vector>

#include "subcube/distribution.hpp"
#include "subcube/oracle.hpp"
#include "subcube/tester/binary_search.hpp"

namespace subcube {

struct LeftVertex {
  ZeroSet point;
  Rational wt;
};

struct RightVertex {
  Index j = 0;
  Rational wt;
};

// G_f restricted to positive-weight vertices: left are the 1-points of the
// support with wt(y) = D(y); right are representative indices j with
// wt(j) = D({x in supp(D), f(x) = 0, h(x) = j}); (y, j) is an edge iff y_j = 0.
struct ViolationGraph {
  std::size_t n = 0;
  std::vector<LeftVertex> left;
  std::vector<RightVertex> right;  // ascending j
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (left pos, right pos), sorted
  // 0-points of the support with h = nil; they belong to no vertex.
  std::vector<WeightedPoint> empty_strings;

  [[nodiscard]] std::vector<std::size_t> left_degrees() const {
    std::vector<std::size_t> deg(left.size(), 0);
    for (const auto& e : edges) ++deg[e.first];
    return deg;
  }

  // wt(G) = sum over left y of wt(y) * deg(y).
  [[nodiscard]] Rational weight() const {
    Rational total = 0;
    for (const auto& e : edges) total += left[e.first].wt;
    return total;
  }
};

// Builds edges between the given vertex lists.
inline void connect(ViolationGraph& G) {
  G.edges.clear();
  for (std::size_t a = 0; a < G.left.size(); ++a)
    for (std::size_t b = 0; b < G.right.size(); ++b)
      if (G.left[a].point.is_zero(G.right[b].j)) G.edges.emplace_back(a, b);
}

// h is computed with the given oracle (queries are charged to it).
inline ViolationGraph build_violation_bigraph(const FunctionSpec& f, const FiniteDistribution& D,
                                              BlackBoxOracle& oracle) {
  if (f.n() != D.n() || oracle.n() != D.n()) throw Error("dimension mismatch");
  ViolationGraph G;
  G.n = D.n();
  std::map<Index, Rational> right;
  for (const auto& e : D.entries()) {
    if (f.eval(e.point)) {
      G.left.push_back({e.point, e.weight});
      continue;
    }
    const auto rep = binary_search_representative(oracle, e.point);
    if (!rep) G.empty_strings.push_back(e);
    else right[*rep] += e.weight;
  }
  for (const auto& [j, w] : right) G.right.push_back({j, w});
  connect(G);
  return G;
}

inline ViolationGraph build_violation_bigraph(const FunctionSpec& f, const FiniteDistribution& D) {
  QueryTranscript t;
  FunctionOracle oracle(f, t);
  return build_violation_bigraph(f, D, oracle);
}

// G_f over the whole cube (n <= 16), including zero-weight vertices: every
// 1-point on the left and h(x) for every 0-point x on the right.
inline ViolationGraph build_full_violation_bigraph(const FunctionSpec& f, const FiniteDistribution& D) {
  const std::size_t n = f.n();
  if (n > 16) throw Error("full violation graph limited to n <= 16");
  QueryTranscript t;
  FunctionOracle oracle(f, t);
  ViolationGraph G;
  G.n = n;
  std::map<Index, Rational> right;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
    const ZeroSet x = ZeroSet::from_mask(n, z);
    if (f.eval(x)) {
      G.left.push_back({x, D.weight_of(x)});
      continue;
    }
    const auto rep = binary_search_representative(oracle, x);
    if (rep) right[*rep] += D.weight_of(x);
  }
  for (const auto& [j, w] : right) G.right.push_back({j, w});
  connect(G);
  return G;
}

}  // namespace subcube
