#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

namespace subcube {

// SplitMix64 finalizer; used only to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seedable, splittable generator. Every randomized routine takes one of
// these explicitly; there is no global generator.
//
// split(k) depends only on the seed this Rng was constructed with and on k,
// never on how many values were drawn, so substream derivation is stable:
//   child_seed = splitmix64(seed ^ splitmix64(k + 1))
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  [[nodiscard]] Rng split(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  unsigned __int128 next_u128() {
    const unsigned __int128 hi = engine_();
    return (hi << 64) | engine_();
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  bool coin(double p) { return unit() < p; }

  std::uint64_t binomial(std::uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    return std::binomial_distribution<std::uint64_t>(trials, p)(engine_);
  }

  // k distinct positions of [0, size), sorted (Floyd's algorithm).
  std::vector<std::uint64_t> sample_positions(std::uint64_t size, std::uint64_t k) {
    k = std::min(k, size);
    std::vector<std::uint64_t> out;
    out.reserve(k);
    if (k == size) {
      for (std::uint64_t i = 0; i < size; ++i) out.push_back(i);
      return out;
    }
    if (k <= 32) {
      for (std::uint64_t j = size - k; j < size; ++j) {
        const std::uint64_t t = below(j + 1);
        out.push_back(std::find(out.begin(), out.end(), t) == out.end() ? t : j);
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(k * 2);
    for (std::uint64_t j = size - k; j < size; ++j) {
      const std::uint64_t t = below(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    out.assign(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), engine_);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace subcube
