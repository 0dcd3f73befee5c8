#include <gtest/gtest.h>

#include "../support/random_instances.hpp"
#include "subcube/tester/amplify.hpp"
#include "subcube/tester/dolev_ron.hpp"
#include "subcube/tester/general.hpp"
#include "subcube/tester/monotone.hpp"

using namespace subcube;

namespace {

// 1 on {a, b, 1^n} restricted as below, 0 on c = a AND b: the smallest
// family with a violation edge. A = {1,2,5}, B = {3,4,6}, alpha = 1.
FunctionSpec triple_function(std::size_t n) {
  const std::vector<Index> A{1, 2, 5}, B{3, 4, 6};
  std::vector<bool> bits(std::size_t{1} << n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t k = 0; k <= full; ++k) {
    const auto z = ZeroSet::from_mask(n, full & ~k);
    const bool in_a = z.subset_of(A), in_b = z.subset_of(B);
    bits[k] = (in_a || in_b) && (!z.is_zero(1) || z.zeros() == A);
  }
  return FunctionSpec::truth_table(n, std::move(bits));
}

FiniteDistribution triple_distribution(std::size_t n) {
  return FiniteDistribution::uniform(n, {ZeroSet(n, {1, 2, 5}), ZeroSet(n, {3, 4, 6}), ZeroSet(n, {1, 2, 3, 4, 5, 6})});
}

struct Run {
  Verdict v;
  QueryTranscript t;
};

Run run_mconj(const FunctionSpec& f, const FiniteDistribution& D, const Rational& eps, std::uint64_t seed,
              std::optional<std::uint64_t> budget = std::nullopt) {
  Run r;
  r.t.blackbox_budget = budget;
  r.t.sample_budget = budget;
  FunctionOracle o(f, r.t);
  FiniteSampler s(f, D, r.t);
  Rng rng(seed);
  r.v = test_monotone_conjunction(o, s, eps, rng);
  return r;
}

}  // namespace

TEST(Params, PinnedValues) {
  const auto p = compute_parameters(4096, Rational(1, 2));
  EXPECT_EQ(p.d, 338u);
  EXPECT_EQ(p.d_star, 228488u);
  EXPECT_EQ(p.r, 16u);
  EXPECT_EQ(p.t, 5408u);
  EXPECT_EQ(p.s, 64896u);
  EXPECT_EQ(p.group_size, 32448u);
  EXPECT_EQ(p.stage0_samples, 7414011072u);
  const auto q = compute_parameters(4096, Rational(1));
  EXPECT_EQ(q.d, 144u);
  EXPECT_EQ(q.d_star, 20736u);
  EXPECT_EQ(q.t, 2304u);
  EXPECT_EQ(q.s, 27648u);
  EXPECT_EQ(q.group_size, 6912u);
  const auto small = compute_parameters(8, Rational(1));
  EXPECT_EQ(small.d, 9u);
  EXPECT_EQ(small.d_star, 81u);
  EXPECT_EQ(small.r, 2u);
  EXPECT_EQ(small.t, 18u);
  EXPECT_EQ(small.s, 54u);
  EXPECT_EQ(small.group_size, 54u);
  EXPECT_EQ(small.stage0_samples, 4428u);
  EXPECT_EQ(compute_parameters(512, Rational(1, 2)).d, 200u);
  EXPECT_EQ(compute_parameters(64, Rational(1, 2)).d, 98u);
  EXPECT_EQ(compute_parameters(64, Rational(1, 2)).r, 4u);
  EXPECT_THROW(compute_parameters(8, Rational(0)), Error);
  EXPECT_THROW(compute_parameters(8, Rational(3, 2)), Error);
  EXPECT_THROW(compute_parameters(1, Rational(1)), Error);
  // 1 + Z*2*ceil(log2 n) + 2s + d*(2 ceil(log2 n) + 2)
  EXPECT_EQ(small.blackbox_bound(10), 1 + 10 * 6 + 108 + 81 * 8);
}

TEST(BinarySearch, Examples) {
  QueryTranscript t;
  const auto f = FunctionSpec::monotone_conj(4, {2});
  FunctionOracle o(f, t);
  EXPECT_EQ(binary_search_representative(o, ZeroSet(4, {1, 2})), 2u);
  EXPECT_EQ(t.blackbox_count, 2u);
  EXPECT_EQ(binary_search_representative(o, ZeroSet(4, {2})), 2u);
  EXPECT_EQ(binary_search_representative(o, ZeroSet(4, {})), std::nullopt);

  // f = 1 on {1} and {2}, 0 on {1,2}: both halves are 1-points
  const auto g = FunctionSpec::truth_table(2, {false, true, true, true});
  QueryTranscript t2;
  FunctionOracle og(g, t2);
  EXPECT_EQ(binary_search_representative(og, ZeroSet(2, {1, 2})), std::nullopt);
}

TEST(BinarySearch, QueryBoundAndCorrectnessForMconj) {
  Rng rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(40);
    const auto f = subcube::testing::random_mconj(n, 5, rng);
    const auto x = subcube::testing::random_point(n, n, rng);
    if (f(x)) continue;
    QueryTranscript t;
    FunctionOracle o(f, t);
    const auto j = binary_search_representative(o, x);
    ASSERT_TRUE(j.has_value());
    EXPECT_TRUE(x.is_zero(*j));
    EXPECT_FALSE(f(ZeroSet(n, {*j})));
    EXPECT_LE(t.blackbox_count, 2 * ceil_log2(x.size()));
  }
}

TEST(MonotoneTester, AllOnesZeroRejectsWithOneQuery) {
  const auto f = FunctionSpec::general_conj(8, {}, {1});
  const auto D = FiniteDistribution::uniform(8, {ZeroSet(8, {1})});
  const auto r = run_mconj(f, D, Rational(1), 1);
  EXPECT_FALSE(r.v.accepted);
  EXPECT_EQ(r.v.reason, Reason::stage0_allones);
  EXPECT_EQ(r.v.blackbox_queries, 1u);
  EXPECT_EQ(r.v.sample_queries, 0u);
}

TEST(MonotoneTester, NilRepresentativeRejects) {
  const auto g = FunctionSpec::truth_table(2, {false, true, true, true});
  const auto D = FiniteDistribution::uniform(2, {ZeroSet(2, {1, 2}), ZeroSet(2, {})});
  const auto r = run_mconj(g, D, Rational(1), 1);
  EXPECT_FALSE(r.v.accepted);
  EXPECT_EQ(r.v.reason, Reason::stage0_nil_representative);
}

TEST(MonotoneTester, AcceptsMonotoneConjunctionsAndCountsSamples) {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 8;
    const auto f = subcube::testing::random_mconj(n, 4, rng);
    const auto D = subcube::testing::random_distribution(n, 6, n, rng);
    const auto p = compute_parameters(n, Rational(1));
    const auto r = run_mconj(f, D, Rational(1), rep);
    ASSERT_TRUE(r.v.accepted) << to_string(r.v.reason);
    EXPECT_EQ(r.v.sample_queries, p.stage0_samples);
    EXPECT_LE(from_u64(r.v.blackbox_queries), p.blackbox_bound(r.v.stage0_zero_samples));
  }
}

TEST(MonotoneTester, RejectsTripleFamily) {
  const std::size_t n = 8;
  const auto f = triple_function(n);
  const auto D = triple_distribution(n);
  int rejections = 0;
  for (int seed = 0; seed < 20; ++seed) rejections += !run_mconj(f, D, Rational(1), seed).v.accepted;
  EXPECT_GE(rejections, 18);
}

TEST(MonotoneTester, ZeroBudgetForcesAccept) {
  const auto f = triple_function(8);
  const auto r = run_mconj(f, triple_distribution(8), Rational(1), 0, 0);
  EXPECT_TRUE(r.v.accepted);
  EXPECT_EQ(r.v.reason, Reason::budget_exhausted);
  EXPECT_EQ(r.t.blackbox_count, 0u);
  EXPECT_EQ(r.t.sample_count, 0u);
  // one query allowed, but the stage needs 4428 samples
  const auto r1 = run_mconj(f, triple_distribution(8), Rational(1), 0, 1);
  EXPECT_EQ(r1.v.reason, Reason::budget_exhausted);
  EXPECT_EQ(r1.t.blackbox_count, 1u);
  EXPECT_EQ(r1.t.sample_count, 1u);
}

TEST(MonotoneTester, LiteralAndCompressedSamplersAgreeOnVerdicts) {
  const auto f = triple_function(8);
  const auto D = triple_distribution(8);
  for (int compressed = 0; compressed < 2; ++compressed) {
    int rejections = 0;
    for (int seed = 0; seed < 10; ++seed) {
      QueryTranscript t;
      FunctionOracle o(f, t);
      FiniteSampler s(f, D, t, compressed == 1);
      Rng rng(seed);
      rejections += !test_monotone_conjunction(o, s, Rational(1), rng).accepted;
    }
    EXPECT_GE(rejections, 9);
  }
}

TEST(Amplify, StopsAtFirstRejection) {
  int calls = 0;
  auto v = amplify(
      [&](Rng&) {
        ++calls;
        Verdict out;
        if (calls == 3) {
          out.accepted = false;
          out.reason = Reason::step_2_1;
        }
        return out;
      },
      11, Rng(1));
  EXPECT_EQ(calls, 3);
  EXPECT_FALSE(v.accepted);
  calls = 0;
  v = amplify([&](Rng&) { ++calls; return Verdict{}; }, 11, Rng(1));
  EXPECT_EQ(calls, 11);
  EXPECT_TRUE(v.accepted);
  EXPECT_THROW(amplify([](Rng&) { return Verdict{}; }, 0, Rng(1)), Error);
}

TEST(GeneralTester, AcceptsConjunctions) {
  Rng rng(8);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 8;
    const auto f = subcube::testing::random_conj(n, 4, rng);
    const auto D = subcube::testing::random_distribution(n, 6, n, rng);
    QueryTranscript t;
    FunctionOracle o(f, t);
    FiniteSampler s(f, D, t);
    Rng r(rep);
    const auto v = test_general_conjunction(o, s, Rational(1), r);
    ASSERT_TRUE(v.accepted) << to_string(v.reason);
  }
}

TEST(GeneralTester, NoPositiveSampleAccepts) {
  const auto f = FunctionSpec::monotone_conj(4, {1});
  const auto D = FiniteDistribution::uniform(4, {ZeroSet(4, {1})});
  QueryTranscript t;
  FunctionOracle o(f, t);
  FiniteSampler s(f, D, t);
  Rng r(1);
  const auto v = test_general_conjunction(o, s, Rational(1), r);
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.reason, Reason::no_positive_sample);
  EXPECT_EQ(v.sample_queries, 3u);
  EXPECT_EQ(v.blackbox_queries, 0u);
}

TEST(GeneralTester, RejectsFlippedTripleFamily) {
  // f(x) = g(x^(C)) for the triple g: far from CONJ as well.
  const std::size_t n = 8;
  const std::vector<Index> C{7};
  const auto [f, D] = flip_transform(triple_function(n), C, triple_distribution(n));
  int rejections = 0;
  for (int seed = 0; seed < 10; ++seed) {
    QueryTranscript t;
    FunctionOracle o(f, t);
    FiniteSampler s(f, D, t);
    Rng r(seed);
    rejections += !amplify([&](Rng& x) { return test_general_conjunction(o, s, Rational(1), x); }, 11, r).accepted;
  }
  EXPECT_GE(rejections, 9);
}

TEST(DolevRon, SampleCountAndBehaviour) {
  EXPECT_EQ(dolev_ron_samples(12, 1.0), 13u);
  EXPECT_EQ(dolev_ron_samples(4096, 1.0), 768u);
  EXPECT_THROW(dolev_ron_samples(4, -1.0), Error);
  const auto f = triple_function(8);
  const auto D = triple_distribution(8);
  int rejections = 0;
  for (int seed = 0; seed < 50; ++seed) {
    QueryTranscript t;
    FunctionOracle o(f, t);
    FiniteSampler s(f, D, t);
    Rng r(seed);
    const auto v = baseline_dolev_ron(o, s, 1.0, r);
    EXPECT_EQ(v.sample_queries, dolev_ron_samples(8, 1.0));
    rejections += !v.accepted;
  }
  EXPECT_GE(rejections, 35);
  Rng rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    const auto g = subcube::testing::random_mconj(8, 4, rng);
    const auto E = subcube::testing::random_distribution(8, 6, 8, rng);
    QueryTranscript t;
    FunctionOracle o(g, t);
    FiniteSampler s(g, E, t);
    Rng r(rep);
    EXPECT_TRUE(baseline_dolev_ron(o, s, 1.0, r).accepted);
  }
}
