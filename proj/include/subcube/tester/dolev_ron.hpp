#pragma once

#include <cmath>
#include <set>

#include "subcube/oracle.hpp"
#include "subcube/tester/binary_search.hpp"
#include "subcube/tester/verdict.hpp"

namespace subcube {

inline std::uint64_t dolev_ron_samples(std::size_t n, double c) {
  if (c < 0) throw Error("sample multiplier must be nonnegative");
  const long double v = c * std::sqrt(static_cast<long double>(n)) * std::log2(static_cast<long double>(n));
  return static_cast<std::uint64_t>(std::ceil(v));
}

// Baseline: sample ceil(c*sqrt(n)*log2 n) points, compute h on every
// 0-sample, and reject when some 1-sample y has y_h(x) = 0, i.e. (y, h(x))
// is an edge of the violation graph.
inline Verdict baseline_dolev_ron(BlackBoxOracle& oracle, SamplingOracle& sampler, double c, Rng& rng) {
  const std::size_t n = oracle.n();
  auto finish = [&](Reason r) {
    Verdict v = make_verdict(r, oracle.transcript());
    v.sample_queries = sampler.transcript().sample_count;
    return v;
  };
  try {
    if (!oracle.query(ZeroSet::all_ones(n))) return finish(Reason::stage0_allones);
    const std::uint64_t T = dolev_ron_samples(n, c);
    std::set<PointId> ones, zeros;
    for (std::uint64_t j = 0; j < T; ++j) {
      const auto s = sampler.draw(rng);
      (s.label ? ones : zeros).insert(s.id);
    }
    std::set<Index> reps;
    for (PointId id : zeros) {
      const auto rep = binary_search_representative(oracle, sampler.point(id));
      if (!rep) return finish(Reason::stage0_nil_representative);
      reps.insert(*rep);
    }
    for (PointId id : ones)
      for (Index alpha : reps)
        if (sampler.point(id).is_zero(alpha)) return finish(Reason::edge_found);
    return finish(Reason::no_edge);
  } catch (const BudgetExhausted&) {
    return finish(Reason::budget_exhausted);
  }
}

}  // namespace subcube
