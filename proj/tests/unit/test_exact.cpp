#include <gtest/gtest.h>

#include <set>

#include "../support/random_instances.hpp"
#include "subcube/exact/conjunction.hpp"
#include "subcube/exact/dlist.hpp"
#include "subcube/exact/ltf.hpp"

using namespace subcube;

namespace {

LabeledSamplePoint pt(std::size_t n, std::initializer_list<Index> zeros, bool label, long num, long den) {
  Rational w(num, den);
  w.canonicalize();
  return {ZeroSet(n, zeros), label, w};
}

// Values frozen from an independent brute-force enumeration.
LabeledSample s1() {
  return LabeledSample(5, {pt(5, {1}, true, 3, 20), pt(5, {2}, true, 1, 10), pt(5, {1, 2}, false, 1, 5),
                           pt(5, {3, 4}, true, 1, 4), pt(5, {5}, false, 1, 10), pt(5, {}, false, 1, 5)});
}

LabeledSample s2() {
  return LabeledSample(3, {pt(3, {1}, true, 1, 8), pt(3, {2}, false, 1, 4), pt(3, {1, 2}, true, 1, 8),
                           pt(3, {3}, false, 1, 8), pt(3, {1, 3}, true, 1, 4), pt(3, {}, false, 1, 8)});
}

LabeledSample s3() {
  return LabeledSample(3, {pt(3, {}, false, 1, 4), pt(3, {1}, true, 1, 4), pt(3, {2}, true, 1, 4),
                           pt(3, {1, 2}, false, 1, 4)});
}

LabeledSample six_strings() {
  const long w = 6;
  return LabeledSample(8, {pt(8, {1, 2}, true, 1, w), pt(8, {3, 4}, true, 1, w), pt(8, {1, 2, 3, 4}, false, 1, w),
                           pt(8, {5, 6}, true, 1, w), pt(8, {7, 8}, true, 1, w),
                           pt(8, {5, 6, 7, 8}, false, 1, w)});
}

LabeledSample quadruple() {
  return LabeledSample(6, {pt(6, {1, 2}, true, 1, 4), pt(6, {3, 4, 5}, true, 1, 4),
                           pt(6, {1, 2, 3, 4, 5}, false, 1, 4), pt(6, {}, false, 1, 4)});
}

using Table = std::vector<bool>;  // indexed by zero mask

Table table_of(const FunctionSpec& f) {
  Table t(std::size_t{1} << f.n());
  for (std::uint64_t z = 0; z < t.size(); ++z) t[z] = f(ZeroSet::from_mask(f.n(), z));
  return t;
}

// All decision-list functions over n variables, as a closure under
// "if literal then b else g".
std::set<Table> all_dlists(std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  std::set<Table> out{Table(size, false), Table(size, true)};
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Table> cur(out.begin(), out.end());
    for (const auto& g : cur)
      for (Index i = 1; i <= n; ++i)
        for (int pos = 0; pos < 2; ++pos)
          for (int b = 0; b < 2; ++b) {
            Table h = g;
            for (std::uint64_t z = 0; z < size; ++z) {
              const bool bit = !(z >> (i - 1) & 1);
              if (bit == (pos == 1)) h[z] = b == 1;
            }
            grew |= out.insert(std::move(h)).second;
          }
  }
  return out;
}

std::set<Table> all_ltfs(std::size_t n, int W) {
  std::set<Table> out;
  std::vector<std::int64_t> w(n, -W);
  while (true) {
    for (int th = -W * static_cast<int>(n) - 1; th <= W * static_cast<int>(n) + 1; ++th)
      out.insert(table_of(FunctionSpec::ltf(n, w, th)));
    std::size_t k = 0;
    while (k < n && w[k] == W) w[k++] = -W;
    if (k == n) break;
    ++w[k];
  }
  return out;
}

Rational best_fit(const LabeledSample& s, const std::set<Table>& cls) {
  Rational best = 1;
  for (const auto& t : cls) {
    Rational err = 0;
    for (const auto& p : s.points())
      if (t[p.point.mask()] != p.label) err += p.weight;
    if (err < best) best = err;
  }
  return best;
}

LabeledSample random_sample(std::size_t n, std::size_t k, Rng& rng) {
  const auto D = subcube::testing::random_distribution(n, k, n, rng);
  std::vector<LabeledSamplePoint> pts;
  for (const auto& e : D.entries()) pts.push_back({e.point, rng.coin(0.5), e.weight});
  return LabeledSample(n, std::move(pts));
}

}  // namespace

TEST(ExactDistance, FrozenValues) {
  EXPECT_EQ(exact_distance_mconj(s1()), Rational(3, 10));
  EXPECT_EQ(exact_distance_conj(s1()), Rational(1, 4));
  EXPECT_EQ(exact_distance_mconj(s2()), Rational(3, 8));
  EXPECT_EQ(exact_distance_conj(s2()), 0);
  EXPECT_EQ(exact_distance_dlist(s2()), 0);
  EXPECT_EQ(exact_distance_ltf(s2()), 0);
  EXPECT_EQ(exact_distance_mconj(s3()), Rational(1, 2));
  EXPECT_EQ(exact_distance_conj(s3()), Rational(1, 4));
  EXPECT_EQ(exact_distance_dlist(s3()), Rational(1, 4));
  EXPECT_EQ(exact_distance_ltf(s3()), Rational(1, 4));
}

TEST(ExactDistance, SmallExamples) {
  const auto s = LabeledSample(2, {pt(2, {1}, true, 1, 3), pt(2, {2}, true, 1, 3), pt(2, {1, 2}, false, 1, 3)});
  EXPECT_EQ(exact_distance_mconj(s), Rational(1, 3));
  EXPECT_FALSE(dlist_consistent(six_strings()));
  EXPECT_EQ(exact_distance_dlist(six_strings()), Rational(1, 6));
  EXPECT_FALSE(ltf_consistent(quadruple()));
  EXPECT_EQ(exact_distance_ltf(quadruple()), Rational(1, 4));
  // each single flip restores separability
  for (std::uint64_t k = 0; k < 4; ++k) EXPECT_TRUE(ltf_consistent(quadruple().flipped_labels(1u << k)));
}

TEST(ExactDistance, WitnessesAchieveTheDistance) {
  const auto s = s1();
  const auto fit = fit_monotone_conjunction(s);
  const auto f = FunctionSpec::monotone_conj(5, fit.S);
  Rational err = 0;
  for (const auto& p : s.points())
    if (f(p.point) != p.label) err += p.weight;
  EXPECT_EQ(err, fit.distance);
  const auto g = fit_general_conjunction(s);
  const auto gc = g.all_zero ? FunctionSpec::general_conj(5, {1}, {1}) : FunctionSpec::general_conj(5, g.S, g.S_neg);
  err = 0;
  for (const auto& p : s.points())
    if (gc(p.point) != p.label) err += p.weight;
  EXPECT_EQ(err, g.distance);
  const auto t2 = s2();
  const auto sep = find_ltf_separator(t2);
  ASSERT_TRUE(sep.has_value());
  for (const auto& p : t2.points()) {
    Rational sum = 0;
    for (Index i = 1; i <= 3; ++i)
      if (p.point.bit(i)) sum += sep->weights[i - 1];
    EXPECT_EQ(sum >= sep->threshold, p.label);
  }
  const auto dl = learn_decision_list(t2);
  ASSERT_TRUE(dl.has_value());
  for (const auto& p : t2.points()) EXPECT_EQ((*dl)(p.point), p.label);
}

TEST(ExactDistance, MatchesBruteForceOverClasses) {
  Rng rng(77);
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t size = std::size_t{1} << n;
    std::set<Table> mconj, conj;
    for (std::uint64_t S = 0; S < size; ++S) {
      std::vector<Index> pos;
      for (Index i = 1; i <= n; ++i)
        if (S >> (i - 1) & 1) pos.push_back(i);
      mconj.insert(table_of(FunctionSpec::monotone_conj(n, pos)));
      for (std::uint64_t N = 0; N < size; ++N) {
        std::vector<Index> neg;
        for (Index i = 1; i <= n; ++i)
          if (N >> (i - 1) & 1) neg.push_back(i);
        conj.insert(table_of(FunctionSpec::general_conj(n, pos, neg)));
      }
    }
    const auto dl = all_dlists(n);
    const auto lt = all_ltfs(n, 3);
    for (int rep = 0; rep < 60; ++rep) {
      const auto s = random_sample(n, 1 + rng.below(size), rng);
      ASSERT_EQ(exact_distance_mconj(s), best_fit(s, mconj));
      ASSERT_EQ(exact_distance_conj(s), best_fit(s, conj));
      ASSERT_EQ(exact_distance_dlist(s), best_fit(s, dl));
      ASSERT_EQ(exact_distance_ltf(s), best_fit(s, lt));
      ASSERT_EQ(dlist_consistent(s), best_fit(s, dl) == 0);
      ASSERT_EQ(ltf_consistent(s), best_fit(s, lt) == 0);
    }
  }
}

TEST(ExactDistance, LtfAgreesWithIntegerSearchAtN4) {
  Rng rng(91);
  const auto lt = all_ltfs(4, 4);
  for (int rep = 0; rep < 60; ++rep) {
    const auto s = random_sample(4, 3 + rng.below(8), rng);
    ASSERT_EQ(ltf_consistent(s), best_fit(s, lt) == 0);
  }
}

TEST(ExactDistance, ClassChainIsMonotone) {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.below(7);
    const auto s = random_sample(n, 2 + rng.below(9), rng);
    const auto m = exact_distance_mconj(s), c = exact_distance_conj(s);
    const auto d = exact_distance_dlist(s), l = exact_distance_ltf(s);
    ASSERT_GE(m, c);
    ASSERT_GE(c, d);
    ASSERT_GE(d, l);
    ASSERT_GE(l, 0);
  }
}

TEST(ExactDistance, FunctionDistributionOverloads) {
  const auto f = FunctionSpec::monotone_conj(4, {1, 2});
  Rng rng(9);
  const auto D = subcube::testing::random_distribution(4, 6, 4, rng);
  EXPECT_EQ(exact_distance_mconj(f, D), 0);
  EXPECT_EQ(exact_distance_conj(f, D), 0);
  EXPECT_THROW(LabeledSample(2, {pt(2, {1}, true, 1, 2), pt(2, {1}, false, 1, 2)}), Error);
}
