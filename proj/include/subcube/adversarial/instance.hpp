#pragma once

// Data model of the lower-bound constructions: parameters, the sampled
// structure (R, blocks, C_i = A_i + B_i, alpha_i, beta_i), the i-special
// predicate and the integer potentials behind the LTF variants. Generation
// lives in adversarial/generate.hpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "subcube/rational.hpp"
#include "subcube/zero_set.hpp"

namespace subcube {

enum class LBVariant { yes, no, yes_ltf, no_ltf };

inline std::string to_string(LBVariant v) {
  switch (v) {
    case LBVariant::yes: return "yes";
    case LBVariant::no: return "no";
    case LBVariant::yes_ltf: return "yes-ltf";
    case LBVariant::no_ltf: return "no-ltf";
  }
  return "?";
}

inline LBVariant parse_variant(const std::string& s) {
  if (s == "yes") return LBVariant::yes;
  if (s == "no") return LBVariant::no;
  if (s == "yes-ltf") return LBVariant::yes_ltf;
  if (s == "no-ltf") return LBVariant::no_ltf;
  throw Error("unknown variant: " + s);
}

inline bool is_no_variant(LBVariant v) { return v == LBVariant::no || v == LBVariant::no_ltf; }

struct LBParams {
  std::size_t n = 0;
  std::size_t h = 0;                // block size
  std::size_t r_blocks = 0;         // number of blocks
  std::size_t ell = 0;              // |C_i|
  std::size_t m = 0;                // number of triples
  std::size_t s = 0;                // per-block zero threshold of the i-special test
  std::size_t blocks_per_C = 0;     // blocks in C'_i
  std::size_t blocks_per_side = 0;  // blocks in each of A_i, B_i
  // Forces C_{2i-1} and C_{2i} to use disjoint blocks (decision-list checks).
  bool disjoint_pairs = false;

  [[nodiscard]] std::size_t r_size() const { return h * r_blocks + 2 * m; }
  // Blocks of A_i (resp. B_i) needed by the i-special conditions.
  [[nodiscard]] std::size_t special_quota() const { return (3 * blocks_per_side + 3) / 4; }

  friend bool operator==(const LBParams&, const LBParams&) = default;
};

// Throws Error naming the first violated constraint.
inline void validate_params(const LBParams& p, LBVariant variant) {
  auto fail = [](const std::string& why) { throw Error("infeasible lower-bound parameters: " + why); };
  if (p.n == 0 || p.h == 0 || p.r_blocks == 0 || p.m == 0 || p.blocks_per_side == 0)
    fail("n, h, r_blocks, m, blocks_per_side must be positive");
  if (p.blocks_per_C != 2 * p.blocks_per_side) fail("blocks_per_C must equal 2*blocks_per_side");
  if (p.ell != p.blocks_per_C * p.h + 2) fail("ell must equal blocks_per_C*h + 2");
  if (p.r_size() > p.n) fail("h*r_blocks + 2m exceeds n");
  if (p.blocks_per_C > p.r_blocks) fail("blocks_per_C exceeds r_blocks");
  if (p.disjoint_pairs && 2 * p.blocks_per_C > p.r_blocks)
    fail("disjoint pairs need 2*blocks_per_C <= r_blocks");
  if (is_no_variant(variant) && p.h <= p.s) fail("NO variants need h > s");
}

// Explicit parameters; ell and blocks_per_C are derived.
inline LBParams scaled_params(std::size_t n, std::size_t h, std::size_t r_blocks, std::size_t m,
                              std::size_t s, std::size_t blocks_per_side) {
  LBParams p;
  p.n = n;
  p.h = h;
  p.r_blocks = r_blocks;
  p.m = m;
  p.s = s;
  p.blocks_per_side = blocks_per_side;
  p.blocks_per_C = 2 * blocks_per_side;
  p.ell = p.blocks_per_C * h + 2;
  return p;
}

// Asymptotic parameter choice rounded to integers: floor for h, ceilings
// elsewhere, then r_blocks raised to blocks_per_C if needed. The result is
// validated; small n is usually infeasible (h rounds to 0).
inline LBParams asymptotic_params(std::size_t n, LBVariant variant) {
  if (n < 2) throw Error("infeasible lower-bound parameters: n < 2");
  const long double lg = std::log2(static_cast<long double>(n));
  const long double lg2 = lg * lg;
  const long double two_thirds = std::pow(static_cast<long double>(n), 2.0L / 3.0L);
  const long double third = std::cbrt(static_cast<long double>(n));
  auto ceil_eps = [](long double v) { return static_cast<std::size_t>(std::ceil(v - 1e-9L)); };
  LBParams p;
  p.n = n;
  p.h = static_cast<std::size_t>(std::floor(two_thirds / (2 * lg2) + 1e-9L));
  p.r_blocks = ceil_eps(third * lg2);
  p.m = ceil_eps(two_thirds);
  p.s = ceil_eps(lg2);
  p.blocks_per_side = ceil_eps(lg2);
  p.blocks_per_C = 2 * p.blocks_per_side;
  p.ell = p.blocks_per_C * p.h + 2;
  if (p.r_blocks < p.blocks_per_C) p.r_blocks = p.blocks_per_C;
  validate_params(p, variant);
  return p;
}

struct LBInstance {
  LBParams params;
  LBVariant variant = LBVariant::yes;
  std::vector<Index> R;                        // sorted
  std::vector<Index> alpha, beta;              // size m each
  std::vector<std::vector<Index>> blocks;      // r_blocks sorted blocks partitioning R'
  std::vector<std::vector<std::size_t>> a_blocks, b_blocks;  // block ids per triple
  // Derived, sorted.
  std::vector<std::vector<Index>> A, B, C;
  std::vector<std::int32_t> block_of;     // index -> block id, -1 if none
  std::vector<std::int32_t> alpha_owner;  // index -> i with alpha_i = index, -1 if none

  [[nodiscard]] std::size_t n() const { return params.n; }
  [[nodiscard]] std::size_t m() const { return params.m; }

  // Recomputes A, B, C, block_of, alpha_owner from the primary fields.
  void derive() {
    const std::size_t n = params.n, m = params.m;
    block_of.assign(n + 1, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (Index j : blocks[b]) block_of[j] = static_cast<std::int32_t>(b);
    alpha_owner.assign(n + 1, -1);
    for (std::size_t i = 0; i < alpha.size(); ++i) alpha_owner[alpha[i]] = static_cast<std::int32_t>(i);
    A.assign(m, {});
    B.assign(m, {});
    C.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Index> a{alpha[i]}, b{beta[i]};
      for (std::size_t id : a_blocks[i]) a.insert(a.end(), blocks[id].begin(), blocks[id].end());
      for (std::size_t id : b_blocks[i]) b.insert(b.end(), blocks[id].begin(), blocks[id].end());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      C[i] = set_union(a, b);
      A[i] = std::move(a);
      B[i] = std::move(b);
    }
  }

  [[nodiscard]] ZeroSet a_point(std::size_t i) const { return ZeroSet::from_sorted(n(), A[i]); }
  [[nodiscard]] ZeroSet b_point(std::size_t i) const { return ZeroSet::from_sorted(n(), B[i]); }
  [[nodiscard]] ZeroSet c_point(std::size_t i) const { return ZeroSet::from_sorted(n(), C[i]); }
};

// Number of zeros of x inside each block it touches.
class BlockZeroCounts {
 public:
  BlockZeroCounts(const LBInstance& inst, const ZeroSet& x) {
    for (Index j : x.zeros()) {
      const auto b = inst.block_of[j];
      if (b >= 0) ++counts_[b];
    }
  }
  [[nodiscard]] std::size_t operator[](std::size_t block) const {
    auto it = counts_.find(static_cast<std::int32_t>(block));
    return it == counts_.end() ? 0 : it->second;
  }

 private:
  std::unordered_map<std::int32_t, std::size_t> counts_;
};

// x is i-special: at least special_quota() blocks of A_i hold more than s
// zeros of x, and at least special_quota() blocks of B_i hold at most s.
inline bool is_i_special(const BlockZeroCounts& counts, const LBInstance& inst, std::size_t i) {
  const std::size_t s = inst.params.s, quota = inst.params.special_quota();
  std::size_t heavy_a = 0, light_b = 0;
  for (std::size_t b : inst.a_blocks.at(i))
    if (counts[b] > s) ++heavy_a;
  for (std::size_t b : inst.b_blocks.at(i))
    if (counts[b] <= s) ++light_b;
  return heavy_a >= quota && light_b >= quota;
}

inline bool is_i_special(const ZeroSet& x, const LBInstance& inst, std::size_t i) {
  if (i >= inst.m()) throw Error("triple index out of range");
  return is_i_special(BlockZeroCounts(inst, x), inst, i);
}

// J(x).
inline std::vector<std::size_t> special_set(const ZeroSet& x, const LBInstance& inst) {
  const BlockZeroCounts counts(inst, x);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < inst.m(); ++i)
    if (is_i_special(counts, inst, i)) out.push_back(i);
  return out;
}

enum class Potential { u, v, phi };

using Wide = __int128;

// Exact value of u, v or phi at x. phi needs the revealed special indices
// gamma (sorted); u and v ignore it.
inline Wide ltf_potential(const ZeroSet& x, const LBInstance& inst, Potential which,
                          std::span<const Index> gamma = {}) {
  const Wide n = static_cast<Wide>(inst.n());
  const Wide m = static_cast<Wide>(inst.m());
  std::size_t zeros_outside_r = 0;
  std::size_t alpha_zeros = 0;
  for (Index j : x.zeros()) {
    if (!std::binary_search(inst.R.begin(), inst.R.end(), j)) ++zeros_outside_r;
    if (inst.alpha_owner[j] >= 0) ++alpha_zeros;
  }
  const Wide outside_ones = static_cast<Wide>(inst.n() - inst.R.size() - zeros_outside_r);
  const Wide ones = n - static_cast<Wide>(x.size());
  Wide middle = 0;
  switch (which) {
    case Potential::u:
      middle = m - static_cast<Wide>(alpha_zeros);
      break;
    case Potential::v: {
      const BlockZeroCounts counts(inst, x);
      std::size_t unforgiven = 0;  // i outside J(x) with x_{alpha_i} = 0
      for (Index j : x.zeros()) {
        const auto i = inst.alpha_owner[j];
        if (i >= 0 && !is_i_special(counts, inst, static_cast<std::size_t>(i))) ++unforgiven;
      }
      middle = m - static_cast<Wide>(unforgiven);
      break;
    }
    case Potential::phi: {
      std::size_t revealed = 0;  // |ZERO(x) ∩ Gamma|
      for (Index j : x.zeros())
        if (std::binary_search(gamma.begin(), gamma.end(), j)) ++revealed;
      middle = m - static_cast<Wide>(revealed);
      break;
    }
  }
  return 10 * n * n * outside_ones + 5 * n * middle - ones;
}

// 4*theta, where theta = 10n^2 |[n]\R| + 5nm - (n - ell/4). Scaling by 4
// keeps the comparison integral when ell is not a multiple of 4.
inline Wide ltf_threshold_times4(const LBInstance& inst) {
  const Wide n = static_cast<Wide>(inst.n());
  const Wide m = static_cast<Wide>(inst.m());
  const Wide outside = static_cast<Wide>(inst.n() - inst.R.size());
  return 40 * n * n * outside + 20 * n * m - 4 * n + static_cast<Wide>(inst.params.ell);
}

inline Rational ltf_threshold(const LBInstance& inst) {
  const Wide t4 = ltf_threshold_times4(inst);
  // |t4| < 2^126 always; split into two 64-bit halves to reach GMP.
  const bool neg = t4 < 0;
  const unsigned __int128 mag = static_cast<unsigned __int128>(neg ? -t4 : t4);
  BigInt z = from_u64(static_cast<std::uint64_t>(mag >> 64));
  z <<= 64;
  z += from_u64(static_cast<std::uint64_t>(mag));
  if (neg) z = -z;
  return Rational(z, 4);
}

// Evaluates the constructed function of the given variant at x.
inline bool eval_lower_bound(const LBInstance& inst, LBVariant variant, const ZeroSet& x) {
  switch (variant) {
    case LBVariant::yes:
    case LBVariant::no: {
      // f1: every coordinate outside R is 1.
      if (!x.subset_of(inst.R)) return false;
      bool any_alpha = false;
      for (Index j : x.zeros())
        if (inst.alpha_owner[j] >= 0) any_alpha = true;
      if (!any_alpha) return true;  // f2(x) = 1
      if (variant == LBVariant::yes) return false;
      // g'(x) = 1 iff x is i-special for every i with x_{alpha_i} = 0.
      const BlockZeroCounts counts(inst, x);
      for (Index j : x.zeros()) {
        const auto i = inst.alpha_owner[j];
        if (i >= 0 && !is_i_special(counts, inst, static_cast<std::size_t>(i))) return false;
      }
      return true;
    }
    case LBVariant::yes_ltf:
      return 4 * ltf_potential(x, inst, Potential::u) >= ltf_threshold_times4(inst);
    case LBVariant::no_ltf:
      return 4 * ltf_potential(x, inst, Potential::v) >= ltf_threshold_times4(inst);
  }
  return false;
}

}  // namespace subcube
