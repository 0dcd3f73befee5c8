#pragma once

// Random lower-bound instances. Every variant shares the same structure
// draw (R, alpha/beta, blocks, C_i = A_i + B_i); the variant fixes the
// function and the distribution over a^i, b^i, c^i (and 1^n for the LTF
// variants).

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <vector>

#include "subcube/adversarial/instance.hpp"
#include "subcube/distribution.hpp"
#include "subcube/function.hpp"
#include "subcube/rng.hpp"

namespace subcube {

struct GeneratedInstance {
  std::shared_ptr<const LBInstance> instance;
  FunctionSpec f;
  FiniteDistribution D;
};

// Throws Error naming the first violated structural invariant.
inline void validate_instance(const LBInstance& inst) {
  auto fail = [](const std::string& why) { throw Error("invalid lower-bound instance: " + why); };
  const auto& p = inst.params;
  validate_params(p, inst.variant);
  const std::size_t n = p.n, m = p.m;
  if (inst.R.size() != p.r_size()) fail("|R| != h*r_blocks + 2m");
  if (!std::is_sorted(inst.R.begin(), inst.R.end()) ||
      std::adjacent_find(inst.R.begin(), inst.R.end()) != inst.R.end())
    fail("R not strictly increasing");
  if (!inst.R.empty() && (inst.R.front() < 1 || inst.R.back() > n)) fail("R out of range");
  if (inst.alpha.size() != m || inst.beta.size() != m) fail("need m alphas and m betas");
  auto in_R = [&](Index j) { return std::binary_search(inst.R.begin(), inst.R.end(), j); };
  std::set<Index> specials;
  for (std::size_t i = 0; i < m; ++i) {
    if (!in_R(inst.alpha[i]) || !in_R(inst.beta[i])) fail("alpha/beta outside R");
    specials.insert(inst.alpha[i]);
    specials.insert(inst.beta[i]);
  }
  if (specials.size() != 2 * m) fail("alphas and betas not pairwise distinct");
  if (inst.blocks.size() != p.r_blocks) fail("wrong number of blocks");
  std::set<Index> covered;
  for (const auto& b : inst.blocks) {
    if (b.size() != p.h) fail("block of wrong size");
    for (Index j : b) {
      if (!in_R(j) || specials.count(j)) fail("block index outside R'");
      if (!covered.insert(j).second) fail("blocks overlap");
    }
  }
  if (covered.size() + specials.size() != inst.R.size()) fail("blocks do not partition R'");
  if (inst.A.size() != m || inst.B.size() != m || inst.C.size() != m) fail("derived sets missing");
  for (std::size_t i = 0; i < m; ++i) {
    if (inst.a_blocks[i].size() != p.blocks_per_side || inst.b_blocks[i].size() != p.blocks_per_side)
      fail("A_i/B_i block count");
    std::set<std::size_t> ids(inst.a_blocks[i].begin(), inst.a_blocks[i].end());
    ids.insert(inst.b_blocks[i].begin(), inst.b_blocks[i].end());
    if (ids.size() != p.blocks_per_C) fail("C'_i blocks not distinct");
    if (inst.A[i].size() != p.ell / 2 || inst.B[i].size() != p.ell / 2) fail("|A_i| or |B_i| != ell/2");
    if (inst.C[i].size() != p.ell) fail("|C_i| != ell");
    if (!std::binary_search(inst.A[i].begin(), inst.A[i].end(), inst.alpha[i])) fail("alpha_i not in A_i");
    if (!std::binary_search(inst.B[i].begin(), inst.B[i].end(), inst.beta[i])) fail("beta_i not in B_i");
    if (intersects(inst.A[i], inst.B[i])) fail("A_i and B_i overlap");
  }
  if (p.disjoint_pairs)
    for (std::size_t i = 0; i + 1 < m; i += 2)
      if (intersects(inst.C[i], inst.C[i + 1])) fail("paired C sets intersect");
}

inline LBInstance generate_structure(const LBParams& params, LBVariant variant, Rng& rng) {
  validate_params(params, variant);
  const std::size_t n = params.n, m = params.m;
  LBInstance inst;
  inst.params = params;
  inst.variant = variant;
  // 1. R uniformly among subsets of size h*r_blocks + 2m
  for (auto pos : rng.sample_positions(n, params.r_size())) inst.R.push_back(static_cast<Index>(pos + 1));
  // 2. a uniformly random tuple of 2m distinct indices of R
  std::vector<Index> pool = inst.R;
  rng.shuffle(pool);
  inst.alpha.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
  inst.beta.assign(pool.begin() + static_cast<std::ptrdiff_t>(m), pool.begin() + static_cast<std::ptrdiff_t>(2 * m));
  // 3. random partition of R' into blocks of size h (pool[2m..] is a
  //    uniformly shuffled R')
  for (std::size_t b = 0; b < params.r_blocks; ++b) {
    auto first = pool.begin() + static_cast<std::ptrdiff_t>(2 * m + b * params.h);
    std::vector<Index> block(first, first + static_cast<std::ptrdiff_t>(params.h));
    std::sort(block.begin(), block.end());
    inst.blocks.push_back(std::move(block));
  }
  // 4-5. C'_i from blocks_per_C random blocks, half of them (random) go to A_i
  inst.a_blocks.resize(m);
  inst.b_blocks.resize(m);
  std::vector<std::size_t> previous;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> candidates;
    const bool second_of_pair = params.disjoint_pairs && i % 2 == 1;
    for (std::size_t b = 0; b < params.r_blocks; ++b)
      if (!second_of_pair || std::find(previous.begin(), previous.end(), b) == previous.end())
        candidates.push_back(b);
    std::vector<std::size_t> chosen;
    for (auto pos : rng.sample_positions(candidates.size(), params.blocks_per_C)) chosen.push_back(candidates[pos]);
    previous = chosen;
    std::vector<std::size_t> order = chosen;
    rng.shuffle(order);
    inst.a_blocks[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(params.blocks_per_side));
    inst.b_blocks[i].assign(order.begin() + static_cast<std::ptrdiff_t>(params.blocks_per_side), order.end());
    std::sort(inst.a_blocks[i].begin(), inst.a_blocks[i].end());
    std::sort(inst.b_blocks[i].begin(), inst.b_blocks[i].end());
  }
  inst.derive();
  validate_instance(inst);
  return inst;
}

inline FiniteDistribution instance_distribution(const LBInstance& inst) {
  const std::size_t n = inst.n(), m = inst.m();
  const BigInt mm = from_u64(m);
  std::vector<WeightedPoint> entries;
  auto w = [&](long num, long den_factor) {
    Rational q(BigInt(num), BigInt(den_factor) * mm);
    q.canonicalize();
    return q;
  };
  const bool ltf = inst.variant == LBVariant::yes_ltf || inst.variant == LBVariant::no_ltf;
  if (ltf) entries.push_back({ZeroSet::all_ones(n), Rational(1, 4)});
  for (std::size_t i = 0; i < m; ++i) {
    switch (inst.variant) {
      case LBVariant::yes:
        entries.push_back({inst.b_point(i), w(2, 3)});
        entries.push_back({inst.c_point(i), w(1, 3)});
        break;
      case LBVariant::no:
        entries.push_back({inst.a_point(i), w(1, 3)});
        entries.push_back({inst.b_point(i), w(1, 3)});
        entries.push_back({inst.c_point(i), w(1, 3)});
        break;
      case LBVariant::yes_ltf:
        entries.push_back({inst.b_point(i), w(1, 2)});
        entries.push_back({inst.c_point(i), w(1, 4)});
        break;
      case LBVariant::no_ltf:
        entries.push_back({inst.a_point(i), w(1, 4)});
        entries.push_back({inst.b_point(i), w(1, 4)});
        entries.push_back({inst.c_point(i), w(1, 4)});
        break;
    }
  }
  return FiniteDistribution(n, std::move(entries));
}

inline GeneratedInstance assemble(LBInstance inst) {
  auto shared = std::make_shared<const LBInstance>(std::move(inst));
  FunctionSpec f = FunctionSpec::lower_bound(shared, shared->variant);
  FiniteDistribution D = instance_distribution(*shared);
  return {shared, std::move(f), std::move(D)};
}

inline GeneratedInstance generate(const LBParams& params, LBVariant variant, Rng& rng) {
  return assemble(generate_structure(params, variant, rng));
}

inline GeneratedInstance gen_yes(const LBParams& p, Rng& rng) { return generate(p, LBVariant::yes, rng); }
inline GeneratedInstance gen_no(const LBParams& p, Rng& rng) { return generate(p, LBVariant::no, rng); }
inline GeneratedInstance gen_yes_ltf(const LBParams& p, Rng& rng) { return generate(p, LBVariant::yes_ltf, rng); }
inline GeneratedInstance gen_no_ltf(const LBParams& p, Rng& rng) { return generate(p, LBVariant::no_ltf, rng); }

}  // namespace subcube
