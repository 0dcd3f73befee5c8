#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "subcube/rational.hpp"

namespace subcube {

using Index = std::uint32_t;  // 1-based coordinate

// A point of {0,1}^n, stored as its set of zero coordinates ZERO(z).
// The all-ones string is the empty set.
class ZeroSet {
 public:
  ZeroSet() = default;

  // zeros may arrive unsorted; duplicates and out-of-range indices throw.
  ZeroSet(std::size_t n, std::vector<Index> zeros) : n_(n), zeros_(std::move(zeros)) {
    if (n_ == 0) throw Error("dimension must be positive");
    std::sort(zeros_.begin(), zeros_.end());
    if (std::adjacent_find(zeros_.begin(), zeros_.end()) != zeros_.end())
      throw Error("duplicate zero coordinate");
    if (!zeros_.empty() && (zeros_.front() < 1 || zeros_.back() > n_))
      throw Error("zero coordinate out of range 1.." + std::to_string(n_));
  }

  ZeroSet(std::size_t n, std::initializer_list<Index> zeros)
      : ZeroSet(n, std::vector<Index>(zeros)) {}

  static ZeroSet all_ones(std::size_t n) { return ZeroSet(n, std::vector<Index>{}); }

  // Trusted constructor for already strictly increasing, in-range input.
  static ZeroSet from_sorted(std::size_t n, std::vector<Index> zeros) {
    ZeroSet z;
    z.n_ = n;
    z.zeros_ = std::move(zeros);
    return z;
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const std::vector<Index>& zeros() const { return zeros_; }
  [[nodiscard]] std::size_t size() const { return zeros_.size(); }
  [[nodiscard]] bool empty() const { return zeros_.empty(); }

  [[nodiscard]] bool is_zero(Index i) const {
    return std::binary_search(zeros_.begin(), zeros_.end(), i);
  }
  [[nodiscard]] bool bit(Index i) const { return !is_zero(i); }

  [[nodiscard]] bool subset_of(std::span<const Index> sorted) const {
    return std::includes(sorted.begin(), sorted.end(), zeros_.begin(), zeros_.end());
  }

  // ZERO(x) symmetric-difference C, i.e. the string x^(C) with C flipped.
  [[nodiscard]] ZeroSet flipped(std::span<const Index> sorted_c) const {
    std::vector<Index> out;
    out.reserve(zeros_.size() + sorted_c.size());
    std::set_symmetric_difference(zeros_.begin(), zeros_.end(), sorted_c.begin(), sorted_c.end(),
                                  std::back_inserter(out));
    return from_sorted(n_, std::move(out));
  }

  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;
  friend auto operator<=>(const ZeroSet& a, const ZeroSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.zeros_ <=> b.zeros_;
  }

  // Bit mask of zeros for n <= 64 (bit i-1 set iff z_i = 0).
  [[nodiscard]] std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (Index i : zeros_) m |= std::uint64_t{1} << (i - 1);
    return m;
  }
  static ZeroSet from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<Index> z;
    for (Index i = 1; i <= n; ++i)
      if (mask >> (i - 1) & 1) z.push_back(i);
    return from_sorted(n, std::move(z));
  }

 private:
  std::size_t n_ = 0;
  std::vector<Index> zeros_;
};

struct ZeroSetHash {
  std::size_t operator()(const ZeroSet& z) const noexcept {
    std::uint64_t h = z.n() * 0x9E3779B97F4A7C15ULL;
    for (Index i : z.zeros()) h = (h ^ i) * 0x100000001B3ULL;
    return static_cast<std::size_t>(h);
  }
};

// Sorted, duplicate-free index set helpers.
inline std::vector<Index> normalize_indices(std::vector<Index> v, std::size_t n) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (!v.empty() && (v.front() < 1 || v.back() > n))
    throw Error("index out of range 1.." + std::to_string(n));
  return v;
}

inline std::vector<Index> set_union(std::span<const Index> a, std::span<const Index> b) {
  std::vector<Index> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool intersects(std::span<const Index> a, std::span<const Index> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return true;
  }
  return false;
}

}  // namespace subcube
