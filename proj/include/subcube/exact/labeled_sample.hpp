#pragma once

#include <set>
#include <vector>

#include "subcube/distribution.hpp"

namespace subcube {

struct LabeledSamplePoint {
  ZeroSet point;
  bool label = false;
  Rational weight;
};

// Distinct labeled points with positive weights summing to at most 1.
class LabeledSample {
 public:
  LabeledSample() = default;
  LabeledSample(std::size_t n, std::vector<LabeledSamplePoint> points) : n_(n), points_(std::move(points)) {
    Rational total = 0;
    std::set<ZeroSet> seen;
    for (const auto& p : points_) {
      if (p.point.n() != n_) throw Error("sample point has wrong dimension");
      if (p.weight <= 0) throw Error("sample weights must be positive");
      if (!seen.insert(p.point).second) throw Error("sample points must be distinct");
      total += p.weight;
    }
    if (total > 1) throw Error("sample weights exceed 1");
  }

  static LabeledSample from(const FunctionSpec& f, const FiniteDistribution& D) {
    if (f.n() != D.n()) throw Error("dimension mismatch");
    std::vector<LabeledSamplePoint> pts;
    for (const auto& e : D.entries()) pts.push_back({e.point, f.eval(e.point), e.weight});
    return LabeledSample(D.n(), std::move(pts));
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const std::vector<LabeledSamplePoint>& points() const { return points_; }
  [[nodiscard]] const LabeledSamplePoint& operator[](std::size_t k) const { return points_[k]; }

  // Same points with the labels in mask (bit k = point k) flipped.
  [[nodiscard]] LabeledSample flipped_labels(std::uint64_t mask) const {
    LabeledSample out = *this;
    for (std::size_t k = 0; k < out.points_.size(); ++k)
      if (mask >> k & 1) out.points_[k].label = !out.points_[k].label;
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<LabeledSamplePoint> points_;
};

namespace detail {

// Weights as integer numerators over a common denominator, when they fit.
struct ScaledWeights {
  std::vector<std::uint64_t> num;
  BigInt denom;
  bool fits = false;
};

inline ScaledWeights scale_weights(const LabeledSample& s) {
  ScaledWeights out;
  out.denom = 1;
  for (const auto& p : s.points())
    mpz_lcm(out.denom.get_mpz_t(), out.denom.get_mpz_t(), p.weight.get_den_mpz_t());
  BigInt total = 0;
  std::vector<BigInt> nums;
  for (const auto& p : s.points()) {
    nums.push_back(p.weight.get_num() * (out.denom / p.weight.get_den()));
    total += nums.back();
  }
  out.fits = mpz_sizeinbase(total.get_mpz_t(), 2) <= 62;
  if (out.fits)
    for (const auto& v : nums) out.num.push_back(to_u64(v));
  return out;
}

// Subsets of [size) ordered by total weight (ties by mask), size <= 16.
inline std::vector<std::uint64_t> subsets_by_weight(const LabeledSample& s) {
  const std::size_t k = s.size();
  std::vector<std::pair<Rational, std::uint64_t>> all;
  all.reserve(std::size_t{1} << k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Rational w = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) w += s[i].weight;
    all.emplace_back(std::move(w), mask);
  }
  std::sort(all.begin(), all.end());
  std::vector<std::uint64_t> out;
  out.reserve(all.size());
  for (auto& [w, m] : all) out.push_back(m);
  return out;
}

inline Rational mask_weight(const LabeledSample& s, std::uint64_t mask) {
  Rational w = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (mask >> i & 1) w += s[i].weight;
  return w;
}

}  // namespace detail

}  // namespace subcube
