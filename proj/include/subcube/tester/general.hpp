#pragma once

#include "subcube/oracle.hpp"
#include "subcube/tester/monotone.hpp"

namespace subcube {

// Tester for general conjunctions: find a 1-sample x* among ceil(3/eps)
// samples (accept if there is none), then test g(x) = f(x^(C)) under
// D^(C) for C = ZERO(x*) with the monotone tester. If f is a conjunction with
// f(x*) = 1, g is a monotone conjunction.
inline Verdict test_general_conjunction(BlackBoxOracle& oracle, SamplingOracle& sampler,
                                        const Rational& epsilon, Rng& rng) {
  const TesterParams p = compute_parameters(oracle.n(), epsilon);
  const std::uint64_t k0 = to_u64(ceil(Rational(3) / epsilon));
  std::optional<ZeroSet> x_star;
  try {
    for (std::uint64_t j = 0; j < k0 && !x_star; ++j) {
      const auto s = sampler.draw(rng);
      if (s.label) x_star = sampler.point(s.id);
    }
  } catch (const BudgetExhausted&) {
    Verdict v = make_verdict(Reason::budget_exhausted, oracle.transcript());
    v.sample_queries = sampler.transcript().sample_count;
    return v;
  }
  if (!x_star) {
    Verdict v = make_verdict(Reason::no_positive_sample, oracle.transcript());
    v.sample_queries = sampler.transcript().sample_count;
    return v;
  }
  FlippedOracle flipped_oracle(oracle, x_star->zeros());
  FlippedSampler flipped_sampler(sampler, x_star->zeros());
  return test_monotone_conjunction(flipped_oracle, flipped_sampler, p, rng);
}

}  // namespace subcube
