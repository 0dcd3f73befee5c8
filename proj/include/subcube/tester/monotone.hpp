#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "subcube/oracle.hpp"
#include "subcube/rng.hpp"
#include "subcube/tester/binary_search.hpp"
#include "subcube/tester/params.hpp"
#include "subcube/tester/verdict.hpp"

namespace subcube {

namespace detail {

// Memoized B = union of ZERO(y) over a set of distinct 1-points.
class UnionCache {
 public:
  explicit UnionCache(const SamplingOracle& sampler) : sampler_(sampler) {}

  const std::vector<Index>& get(const std::vector<PointId>& ids) {
    auto it = cache_.find(ids);
    if (it != cache_.end()) return it->second;
    std::vector<Index> B;
    for (PointId id : ids) {
      const auto& z = sampler_.point(id).zeros();
      B.insert(B.end(), z.begin(), z.end());
    }
    std::sort(B.begin(), B.end());
    B.erase(std::unique(B.begin(), B.end()), B.end());
    return cache_.emplace(ids, std::move(B)).first->second;
  }

 private:
  const SamplingOracle& sampler_;
  std::map<std::vector<PointId>, std::vector<Index>> cache_;
};

inline std::vector<Index> pick(const std::vector<Index>& B, std::size_t k, Rng& rng) {
  std::vector<Index> out;
  out.reserve(k + 1);
  for (auto pos : rng.sample_positions(B.size(), k)) out.push_back(B[pos]);
  return out;
}

}  // namespace detail

// Monotone conjunction tester. Stage 0 draws all (d*+1) groups of ceil(3t/eps) samples and
// computes h once per distinct 0-point (h is deterministic, so Stage 2
// reuses the value). Terminal on the first Accept/Reject; a budget signal
// from either oracle ends the run with a forced accept.
inline Verdict test_monotone_conjunction(BlackBoxOracle& oracle, SamplingOracle& sampler,
                                         const TesterParams& p, Rng& rng) {
  if (oracle.n() != p.n || sampler.n() != p.n) throw Error("tester parameters do not match oracle dimension");
  QueryTranscript& t = oracle.transcript();
  QueryTranscript& ts = sampler.transcript();
  bool stage0_done = false;
  std::uint64_t zero_samples = 0, distinct_zeros = 0;
  auto finish = [&](Reason r) {
    Verdict v = make_verdict(r, t);
    v.sample_queries = ts.sample_count;
    v.stage0_completed = stage0_done;
    v.stage0_zero_samples = zero_samples;
    v.stage0_distinct_zeros = distinct_zeros;
    return v;
  };
  const std::size_t n = p.n;
  try {
    // Stage 0
    if (!oracle.query(ZeroSet::all_ones(n))) return finish(Reason::stage0_allones);
    const SampleStage stage = sampler.draw_stage(p.d_star + 1, p.group_size, p.t, rng);
    zero_samples = stage.zero_samples;
    distinct_zeros = stage.zero_points.size();
    std::map<PointId, Index> h;
    for (PointId id : stage.zero_points) {
      const auto rep = binary_search_representative(oracle, sampler.point(id));
      if (!rep) return finish(Reason::stage0_nil_representative);
      h.emplace(id, *rep);
    }
    stage0_done = true;

    detail::UnionCache unions(sampler);

    // Stage 1
    const SampleGroup& first = stage.groups.front();
    if (first.ones < p.t) return finish(Reason::stage1_few_ones);
    const std::vector<Index> B1 = unions.get(sampler.lead_ones(first, p.t, rng));
    if (!B1.empty()) {
      for (std::uint64_t k = 0; k < p.s; ++k) {
        const Index i = B1[rng.below(B1.size())];
        if (!oracle.query(ZeroSet::from_sorted(n, {i}))) return finish(Reason::step_1_1);
      }
      const std::size_t size = std::min<std::uint64_t>(p.r, B1.size());
      for (std::uint64_t k = 0; k < p.s; ++k)
        if (!oracle.query(ZeroSet::from_sorted(n, detail::pick(B1, size, rng)))) return finish(Reason::step_1_2);
    }

    // Stage 2
    for (std::uint64_t i = 1; i <= p.d_star; ++i) {
      const SampleGroup& g = stage.groups[i];
      if (g.ones < p.t - 1) return finish(Reason::stage2_few_ones);
      if (!g.first_zero) return finish(Reason::stage2_no_zero);
      const std::vector<Index>& B = unions.get(sampler.lead_ones(g, p.t - 1, rng));
      const auto it = h.find(*g.first_zero);
      if (it == h.end()) return finish(Reason::stage2_nil);
      const Index alpha = it->second;
      if (std::binary_search(B.begin(), B.end(), alpha)) return finish(Reason::step_2_1);
      auto P = detail::pick(B, std::min<std::uint64_t>(p.r - 1, B.size()), rng);
      P.insert(std::upper_bound(P.begin(), P.end(), alpha), alpha);
      if (oracle.query(ZeroSet::from_sorted(n, std::move(P)))) return finish(Reason::step_2_2);
    }
    return finish(Reason::end_of_stage_2);
  } catch (const BudgetExhausted&) {
    return finish(Reason::budget_exhausted);
  }
}

inline Verdict test_monotone_conjunction(BlackBoxOracle& oracle, SamplingOracle& sampler,
                                         const Rational& epsilon, Rng& rng) {
  return test_monotone_conjunction(oracle, sampler, compute_parameters(oracle.n(), epsilon), rng);
}

}  // namespace subcube
