#include <gtest/gtest.h>

#include "../support/random_instances.hpp"
#include "subcube/distribution.hpp"
#include "subcube/io.hpp"
#include "subcube/rational.hpp"
#include "subcube/rng.hpp"

using namespace subcube;

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(format_rational(Rational(4, 8)), "1/2");
  EXPECT_EQ(format_rational(Rational(3)), "3/1");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("0.5"), Error);
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_EQ(ceil(Rational(7, 2)), 4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
}

TEST(ZeroSet, Basics) {
  ZeroSet x(5, {4, 2});
  EXPECT_EQ(x.zeros(), (std::vector<Index>{2, 4}));
  EXPECT_TRUE(x.is_zero(2));
  EXPECT_TRUE(x.bit(1));
  EXPECT_THROW(ZeroSet(5, {2, 2}), Error);
  EXPECT_THROW(ZeroSet(5, {6}), Error);
  EXPECT_THROW(ZeroSet(5, {0}), Error);
  EXPECT_EQ(ZeroSet::from_mask(5, x.mask()), x);
  // flipping toggles membership of every coordinate in C
  const std::vector<Index> C{1, 2};
  EXPECT_EQ(x.flipped(C), ZeroSet(5, {1, 4}));
  EXPECT_EQ(x.flipped(C).flipped(C), x);
}

TEST(FunctionSpec, EvalExamples) {
  const auto f = FunctionSpec::monotone_conj(4, {1, 3});
  EXPECT_TRUE(f(ZeroSet(4, {2, 4})));
  EXPECT_FALSE(f(ZeroSet(4, {3})));
  EXPECT_TRUE(FunctionSpec::monotone_conj(4, {})(ZeroSet(4, {1, 2, 3, 4})));

  const auto g = FunctionSpec::general_conj(4, {1}, {2});
  EXPECT_TRUE(g(ZeroSet(4, {2})));
  EXPECT_FALSE(g(ZeroSet(4, {})));
  EXPECT_FALSE(g(ZeroSet(4, {1, 2})));

  // if z_2 = 0 then 1, else if z_1 then 0, else 1
  const auto dl = FunctionSpec::decision_list(3, {{{2, false}, true}, {{1, true}, false}}, true);
  EXPECT_TRUE(dl(ZeroSet(3, {2})));
  EXPECT_FALSE(dl(ZeroSet(3, {})));
  EXPECT_TRUE(dl(ZeroSet(3, {1})));

  const auto ltf = FunctionSpec::ltf(3, {2, 1, 1}, 3);
  EXPECT_TRUE(ltf(ZeroSet(3, {2})));
  EXPECT_FALSE(ltf(ZeroSet(3, {1})));

  // tabulating preserves values
  Rng rng(5);
  const auto h = subcube::testing::random_conj(6, 4, rng);
  const auto tt = tabulate(h);
  for (std::uint64_t m = 0; m < 64; ++m) EXPECT_EQ(tt(ZeroSet::from_mask(6, m)), h(ZeroSet::from_mask(6, m)));
}

TEST(FiniteDistribution, Validation) {
  EXPECT_THROW(FiniteDistribution(2, {{ZeroSet(2, {1}), Rational(1, 2)}}), Error);
  EXPECT_THROW(FiniteDistribution(2, {{ZeroSet(2, {1}), Rational(1, 2)}, {ZeroSet(2, {1}), Rational(1, 2)}}),
               Error);
  EXPECT_THROW(FiniteDistribution(2, {{ZeroSet(2, {1}), Rational(0)}, {ZeroSet(2, {}), Rational(1)}}), Error);
  const auto D = FiniteDistribution::from_masses(3, {ZeroSet(3, {1}), ZeroSet(3, {2})}, {1, 3});
  EXPECT_EQ(D.weight_of(ZeroSet(3, {2})), Rational(3, 4));
  EXPECT_EQ(D.weight_of(ZeroSet(3, {3})), Rational(0));
  const auto f = FunctionSpec::monotone_conj(3, {1});
  EXPECT_EQ(D.mass(f, true), Rational(3, 4));
}

// g(x) = f(x^(C)) and D^(C) moves mass along; checked exhaustively.
TEST(FlipTransform, ExhaustiveSmallN) {
  Rng rng(17);
  for (std::size_t n = 1; n <= 10; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto f = subcube::testing::random_conj(n, n, rng);
      const auto D = subcube::testing::random_distribution(n, 4, n, rng);
      const auto C = subcube::testing::random_subset(n, n, rng);
      const auto [g, DC] = flip_transform(f, C, D);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const auto x = ZeroSet::from_mask(n, m);
        ASSERT_EQ(g(x), f(x.flipped(C)));
        ASSERT_EQ(DC.weight_of(x), D.weight_of(x.flipped(C)));
      }
      EXPECT_EQ(disagreement(f, f, D), 0);
    }
  }
}

TEST(Rng, SplitStreamsAreReproducible) {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
  EXPECT_NE(Rng(42).split(0)(), Rng(42).split(1)());
  EXPECT_EQ(Rng(42).split(3)(), Rng(42).split(3)());
  Rng r(1);
  const auto pos = r.sample_positions(100, 40);
  EXPECT_EQ(pos.size(), 40u);
  EXPECT_TRUE(std::is_sorted(pos.begin(), pos.end()));
  EXPECT_EQ(std::adjacent_find(pos.begin(), pos.end()), pos.end());
}

TEST(Io, InstanceRoundTrip) {
  const std::vector<FunctionSpec> fs{
      FunctionSpec::monotone_conj(4, {1, 2}),
      FunctionSpec::general_conj(4, {1}, {3, 4}),
      FunctionSpec::decision_list(4, {{{2, false}, true}, {{4, true}, false}}, true),
      FunctionSpec::ltf(4, {3, -1, 2, 0}, 2),
      FunctionSpec::flipped(FunctionSpec::monotone_conj(4, {2}), {2, 3}),
  };
  const auto D = FiniteDistribution::from_masses(4, {ZeroSet(4, {}), ZeroSet(4, {2, 3}), ZeroSet(4, {4})},
                                                 {1, 2, 3});
  for (const auto& f : fs) {
    const auto back = instance_from_json(instance_to_json(f, D));
    EXPECT_EQ(instance_to_json(back.f, back.D), instance_to_json(f, D));
    for (std::uint64_t m = 0; m < 16; ++m)
      EXPECT_EQ(back.f(ZeroSet::from_mask(4, m)), f(ZeroSet::from_mask(4, m)));
  }
  Rng rng(3);
  const auto tt = subcube::testing::random_truth_table(5, rng);
  const auto D5 = FiniteDistribution::uniform(5, {ZeroSet(5, {1})});
  const auto back = instance_from_json(instance_to_json(tt, D5));
  for (std::uint64_t m = 0; m < 32; ++m) EXPECT_EQ(back.f(ZeroSet::from_mask(5, m)), tt(ZeroSet::from_mask(5, m)));
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(instance_from_json(Json::parse(R"({"n":0,"function":{"type":"mconj","S":[]},"distribution":[]})")),
               Error);
  EXPECT_THROW(instance_from_json(Json::parse(
                   R"({"n":2,"function":{"type":"mconj","S":[]},"distribution":[{"zeros":[1],"weight":"1/2"}]})")),
               Error);
  EXPECT_THROW(instance_from_json(Json::parse(
                   R"({"n":2,"function":{"type":"nope"},"distribution":[{"zeros":[1],"weight":"1"}]})")),
               Error);
}
