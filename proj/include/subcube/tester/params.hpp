#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

#include "subcube/rational.hpp"

namespace subcube {

struct TesterParams {
  std::uint64_t n = 0;
  Rational epsilon;
  std::uint64_t d = 0, d_star = 0, r = 0, t = 0, s = 0;
  std::uint64_t group_size = 0;      // ceil(3t/eps)
  std::uint64_t stage0_samples = 0;  // group_size * (d_star + 1)
  std::uint64_t log2n_ceil = 0;      // ceil(log2 n)

  // Closed-form black-box budget given the Stage-0 zero-sample count Z.
  [[nodiscard]] BigInt blackbox_bound(std::uint64_t zero_samples) const {
    BigInt b = 1;
    b += from_u64(zero_samples) * from_u64(2 * log2n_ceil);
    b += from_u64(2) * from_u64(s);
    b += from_u64(d_star) * from_u64(2 * log2n_ceil + 2);
    return b;
  }
};

inline std::uint64_t ceil_log2(std::uint64_t v) {
  return v <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(v - 1));
}

// Smallest r with r^3 >= n.
inline std::uint64_t ceil_cbrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(n)));
  while (r > 0 && (r - 1) * (r - 1) * (r - 1) >= n) --r;
  while (r * r * r < n) ++r;
  return r;
}

// log2^2(n/eps)/eps rounded up. Exact when n/eps is a power of two.
inline BigInt ceil_log2sq_over_eps(std::uint64_t n, const Rational& eps) {
  const Rational ratio = Rational(from_u64(n)) / eps;
  const BigInt num = ratio.get_num(), den = ratio.get_den();
  if (den == 1 && mpz_popcount(num.get_mpz_t()) == 1) {
    const auto k = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2) - 1);
    return ceil(Rational(BigInt(k) * k) / eps);
  }
  const long double lg = std::log2(static_cast<long double>(ratio.get_d()));
  const long double v = lg * lg / static_cast<long double>(eps.get_d());
  return from_u64(static_cast<std::uint64_t>(std::ceil(v)));
}

inline TesterParams compute_parameters(std::uint64_t n, const Rational& epsilon) {
  if (n < 2) throw Error("tester needs n >= 2");
  if (epsilon <= 0 || epsilon > 1) throw Error("epsilon must lie in (0, 1]");
  TesterParams p;
  p.n = n;
  p.epsilon = epsilon;
  const BigInt d = ceil_log2sq_over_eps(n, epsilon);
  const BigInt d_star = ceil(Rational(d * d) / epsilon);
  const BigInt r = from_u64(ceil_cbrt(n));
  const BigInt t = d * r;
  p.log2n_ceil = ceil_log2(n);
  const BigInt s = t * from_u64(p.log2n_ceil);
  const BigInt group = ceil(Rational(3 * t) / epsilon);
  const BigInt stage0 = group * (d_star + 1);
  p.d = to_u64(d);
  p.d_star = to_u64(d_star);
  p.r = to_u64(r);
  p.t = to_u64(t);
  p.s = to_u64(s);
  p.group_size = to_u64(group);
  p.stage0_samples = to_u64(stage0);
  return p;
}

}  // namespace subcube
