#include <gtest/gtest.h>

#include "../support/random_instances.hpp"
#include "subcube/exact/conjunction.hpp"
#include "subcube/violation/bigraph.hpp"
#include "subcube/violation/hypergraph.hpp"
#include "subcube/violation/prune.hpp"
#include "subcube/violation/vertex_cover.hpp"

using namespace subcube;

namespace {

bool is_mconj_brute(const FunctionSpec& f) {
  const std::size_t n = f.n();
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << n); ++S) {
    bool same = true;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n) && same; ++z)
      same = f(ZeroSet::from_mask(n, z)) == ((z & S) == 0);
    if (same) return true;
  }
  return false;
}

FunctionSpec table_from_index(std::size_t n, std::uint64_t code) {
  std::vector<bool> bits(std::size_t{1} << n);
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = code >> k & 1;
  return FunctionSpec::truth_table(n, std::move(bits));
}

ViolationGraph make_graph(std::vector<Rational> lw, std::vector<Rational> rw,
                          std::vector<std::pair<std::size_t, std::size_t>> edges) {
  ViolationGraph G;
  G.n = 8;
  for (std::size_t a = 0; a < lw.size(); ++a) G.left.push_back({ZeroSet(8, {static_cast<Index>(a + 1)}), lw[a]});
  for (std::size_t b = 0; b < rw.size(); ++b) G.right.push_back({static_cast<Index>(b + 1), rw[b]});
  std::sort(edges.begin(), edges.end());
  G.edges = std::move(edges);
  return G;
}

}  // namespace

TEST(Hypergraph, Examples) {
  EXPECT_FALSE(hypergraph_has_violation(FunctionSpec::monotone_conj(5, {1, 4})).has_violation);
  const auto not1 = FunctionSpec::general_conj(3, {}, {1});
  const auto w = hypergraph_has_violation(not1);
  ASSERT_TRUE(w.has_violation);
  EXPECT_TRUE(w.witness->x.empty());
  // f = 1 on {1}, {2}, 1^n only: x = {1,2} is covered by the two 1-points
  const auto g = FunctionSpec::truth_table(2, {false, true, true, true});
  const auto c = hypergraph_has_violation(g);
  ASSERT_TRUE(c.has_violation);
  EXPECT_EQ(c.witness->x, ZeroSet(2, {1, 2}));
  for (const auto& y : c.witness->ys) EXPECT_TRUE(g(y));
}

TEST(Hypergraph, CharacterizesMconjUpToN3) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
    for (std::uint64_t code = 0; code < count; ++code) {
      const auto f = table_from_index(n, code);
      const auto res = hypergraph_has_violation(f);
      ASSERT_EQ(!res.has_violation, is_mconj_brute(f)) << "n=" << n << " code=" << code;
      if (res.has_violation && !res.witness->x.empty()) {
        // witness: f(x) = 0 and x's zeros are covered by 1-points' zeros
        EXPECT_FALSE(f(res.witness->x));
        std::vector<Index> covered;
        for (const auto& y : res.witness->ys) {
          EXPECT_TRUE(f(y));
          covered = set_union(covered, y.zeros());
        }
        EXPECT_TRUE(res.witness->x.subset_of(covered));
      }
    }
  }
}

TEST(Bigraph, TripleExample) {
  // f = 1 exactly on a = zeros {1,2,5}, b = zeros {3,4,6} and 1^n
  const std::size_t n = 8;
  std::vector<bool> bits(std::size_t{1} << n, false);
  const std::uint64_t full = (1u << n) - 1;
  for (auto z : {ZeroSet(n, {1, 2, 5}), ZeroSet(n, {3, 4, 6}), ZeroSet(n, {})}) bits[full & ~z.mask()] = true;
  const auto f = FunctionSpec::truth_table(n, bits);
  const auto D = FiniteDistribution::uniform(n, {ZeroSet(n, {1, 2, 5}), ZeroSet(n, {3, 4, 6}),
                                                 ZeroSet(n, {1, 2, 3, 4, 5, 6})});
  const auto G = build_violation_bigraph(f, D);
  ASSERT_EQ(G.left.size(), 2u);
  EXPECT_EQ(G.left[0].wt, Rational(1, 3));
  ASSERT_EQ(G.right.size(), 1u);
  EXPECT_EQ(G.right[0].j, 1u);  // {1,2,3} -> {1,2} -> {1}
  EXPECT_EQ(G.right[0].wt, Rational(1, 3));
  ASSERT_EQ(G.edges.size(), 1u);
  EXPECT_EQ(G.left[G.edges[0].first].point, ZeroSet(n, {1, 2, 5}));
  EXPECT_EQ(G.weight(), Rational(1, 3));
  EXPECT_TRUE(G.empty_strings.empty());
}

TEST(Bigraph, NilRepresentativeGoesToEmptyStrings) {
  // f = 1 exactly on {1}, {2} and 1^n (n = 6): h({1,2}) is nil
  const std::size_t n = 6;
  std::vector<bool> bits(std::size_t{1} << n, false);
  const std::uint64_t full = (1u << n) - 1;
  for (auto z : {ZeroSet(n, {1}), ZeroSet(n, {2}), ZeroSet(n, {})}) bits[full & ~z.mask()] = true;
  const auto f = FunctionSpec::truth_table(n, bits);
  const auto D = FiniteDistribution::uniform(n, {ZeroSet(n, {1}), ZeroSet(n, {2}), ZeroSet(n, {1, 2})});
  const auto G = build_violation_bigraph(f, D);
  EXPECT_EQ(G.left.size(), 2u);
  EXPECT_TRUE(G.right.empty());
  EXPECT_TRUE(G.edges.empty());
  ASSERT_EQ(G.empty_strings.size(), 1u);
  EXPECT_EQ(G.empty_strings[0].point, ZeroSet(n, {1, 2}));
}

TEST(Bigraph, RestrictedGraphIsInducedSubgraphOfFullGraph) {
  Rng rng(23);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + rng.below(5);
    const auto f = subcube::testing::random_truth_table(n, rng, 0.7);
    const auto D = subcube::testing::random_distribution(n, 5, n, rng);
    const auto G = build_violation_bigraph(f, D);
    const auto F = build_full_violation_bigraph(f, D);
    std::map<ZeroSet, std::size_t> fl;
    for (std::size_t a = 0; a < F.left.size(); ++a) fl[F.left[a].point] = a;
    std::map<Index, std::size_t> fr;
    for (std::size_t b = 0; b < F.right.size(); ++b) fr[F.right[b].j] = b;
    std::set<std::pair<std::size_t, std::size_t>> fe(F.edges.begin(), F.edges.end());
    for (const auto& v : G.left) EXPECT_EQ(F.left[fl.at(v.point)].wt, v.wt);
    std::size_t positive_right = 0;
    for (const auto& v : F.right) positive_right += v.wt > 0;
    Rational empty_mass = 0;
    for (const auto& e : G.empty_strings) empty_mass += e.weight;
    EXPECT_EQ(G.right.size(), positive_right);
    for (const auto& v : G.right) EXPECT_EQ(F.right[fr.at(v.j)].wt, v.wt);
    for (const auto& [a, b] : G.edges) EXPECT_TRUE(fe.count({fl.at(G.left[a].point), fr.at(G.right[b].j)}));
    // every positive-weight edge of the full graph survives
    std::size_t positive_edges = 0;
    for (const auto& [a, b] : F.edges) positive_edges += F.left[a].wt > 0 && F.right[b].wt > 0;
    EXPECT_EQ(G.edges.size(), positive_edges);
    // 0-mass splits into right weights and nil strings
    Rational right_mass = 0;
    for (const auto& v : G.right) right_mass += v.wt;
    EXPECT_EQ(right_mass + empty_mass, D.mass(f, false));
  }
}

TEST(VertexCover, Examples) {
  const auto single = make_graph({Rational(3, 10)}, {Rational(1, 5)}, {{0, 0}});
  const auto c1 = min_weight_vertex_cover(single);
  EXPECT_EQ(c1.weight, Rational(1, 5));
  EXPECT_TRUE(is_vertex_cover(single, c1));
  const Rational q(1, 4);
  const auto k22 = make_graph({q, q}, {q, q}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto c2 = min_weight_vertex_cover(k22);
  EXPECT_EQ(c2.weight, Rational(1, 2));
  EXPECT_TRUE(is_vertex_cover(k22, c2));
  EXPECT_EQ(min_weight_vertex_cover(make_graph({q}, {q}, {})).weight, 0);
}

TEST(VertexCover, MatchesBruteForce) {
  Rng rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t L = 1 + rng.below(5), R = 1 + rng.below(5);
    std::vector<Rational> lw, rw;
    for (std::size_t i = 0; i < L; ++i) lw.emplace_back(static_cast<long>(1 + rng.below(9)), 40L);
    for (std::size_t i = 0; i < R; ++i) rw.emplace_back(static_cast<long>(1 + rng.below(9)), 40L);
    for (auto& w : lw) w.canonicalize();
    for (auto& w : rw) w.canonicalize();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < L; ++a)
      for (std::size_t b = 0; b < R; ++b)
        if (rng.coin(0.4)) edges.emplace_back(a, b);
    const auto G = make_graph(lw, rw, edges);
    Rational best = -1;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (L + R)); ++m) {
      bool ok = true;
      for (const auto& [a, b] : G.edges) ok &= ((m >> a) & 1) || ((m >> (L + b)) & 1);
      if (!ok) continue;
      Rational w = 0;
      for (std::size_t a = 0; a < L; ++a)
        if (m >> a & 1) w += lw[a];
      for (std::size_t b = 0; b < R; ++b)
        if (m >> (L + b) & 1) w += rw[b];
      if (best < 0 || w < best) best = w;
    }
    const auto C = min_weight_vertex_cover(G);
    ASSERT_EQ(C.weight, best);
    ASSERT_TRUE(is_vertex_cover(G, C));
  }
}

TEST(Prune, StarCenterIsRemoved) {
  const Rational e(1, 8);
  const auto star = make_graph({Rational(1, 2)}, {e, e, e, e}, {{0, 0}, {0, 1}, {0, 2}, {0, 3}});
  const auto rep = prune_to_regular(star, Rational(1, 2), 1);
  EXPECT_EQ(rep.exit_reason, PruneExit::cheap_cover_found);
  ASSERT_FALSE(rep.removed_S.empty());
  EXPECT_TRUE(rep.removed_S[0].is_left);
  EXPECT_EQ(rep.removed_S[0].position, 0u);
  EXPECT_TRUE(rep.G_star.edges.empty());
}

TEST(Prune, MatchingHasNoHeavyVertex) {
  const Rational q(1, 4);
  const auto G = make_graph({q, q, q, q}, {q, q, q, q}, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  const auto rep = prune_to_regular(G, Rational(1, 2), 2);
  EXPECT_EQ(rep.exit_reason, PruneExit::no_heavy_left);
  EXPECT_TRUE(rep.removed_S.empty());
  EXPECT_EQ(rep.W, 1);
  EXPECT_TRUE(has_no_heavy_vertex(rep.G_star, 2));
  EXPECT_EQ(rep.L_prime.size(), 4u);
  const auto diag = regularity_diagnostics(rep, Rational(1, 2), 2);
  EXPECT_EQ(diag.min_cover, 1);
  EXPECT_TRUE(diag.cover_at_least_3eps_over_8);
  EXPECT_FALSE(has_no_heavy_vertex(G, 1));
}

TEST(Prune, CoverBoundsDistanceOnRandomInstances) {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 3 + rng.below(4);
    const auto f = subcube::testing::random_truth_table(n, rng, 0.75);
    const auto D = subcube::testing::random_distribution(n, 8, n, rng);
    const auto G = build_violation_bigraph(f, D);
    if (!G.empty_strings.empty() || !f(ZeroSet::all_ones(n))) continue;
    EXPECT_GE(min_weight_vertex_cover(G).weight, exact_distance_mconj(f, D));
    const auto pr = prune_to_regular(G, Rational(1, 2), 3);
    if (pr.exit_reason == PruneExit::no_heavy_left) {
      EXPECT_TRUE(has_no_heavy_vertex(pr.G_star, 3));
    }
  }
}
