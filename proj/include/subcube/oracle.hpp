#pragma once

// Query-counting oracles. The black-box oracle answers f on chosen points;
// the sampling oracle returns labeled draws from D. Both charge a shared
// QueryTranscript.
//
// The monotone tester asks for billions of samples at moderate n, so samplers also
// expose a grouped interface (draw_stage) that returns only what the tester
// reads from each group: the count of 1-samples, the first 0-sample, the
// first few 1-samples on request, and which 0-points occurred anywhere.
// FiniteSampler answers it from the group's sufficient statistics instead of
// drawing every sample; the default implementation draws literally.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "subcube/distribution.hpp"
#include "subcube/function.hpp"
#include "subcube/rng.hpp"
#include "subcube/transcript.hpp"
#include "subcube/zero_set.hpp"

namespace subcube {

class BlackBoxOracle {
 public:
  virtual ~BlackBoxOracle() = default;
  [[nodiscard]] virtual std::size_t n() const = 0;
  // Answers f(x) and charges one black-box query.
  virtual bool query(const ZeroSet& x) = 0;
  virtual QueryTranscript& transcript() = 0;
};

inline bool counted_query(BlackBoxOracle& oracle, const ZeroSet& x) { return oracle.query(x); }

class FunctionOracle final : public BlackBoxOracle {
 public:
  FunctionOracle(const FunctionSpec& f, QueryTranscript& t) : f_(f), t_(t) {}

  [[nodiscard]] std::size_t n() const override { return f_.n(); }
  bool query(const ZeroSet& x) override {
    t_.check_query_budget();
    const bool answer = f_.eval(x);
    t_.record_query(x, answer);
    return answer;
  }
  QueryTranscript& transcript() override { return t_; }

 private:
  const FunctionSpec& f_;
  QueryTranscript& t_;
};

// Oracle for g(x) = f(x^(C)); forwards exactly one query per query.
class FlippedOracle final : public BlackBoxOracle {
 public:
  FlippedOracle(BlackBoxOracle& inner, std::vector<Index> C)
      : inner_(inner), c_(normalize_indices(std::move(C), inner.n())) {}

  [[nodiscard]] std::size_t n() const override { return inner_.n(); }
  bool query(const ZeroSet& x) override { return inner_.query(x.flipped(c_)); }
  QueryTranscript& transcript() override { return inner_.transcript(); }

 private:
  BlackBoxOracle& inner_;
  std::vector<Index> c_;
};

using PointId = std::uint32_t;

struct LabeledDraw {
  PointId id = 0;
  bool label = false;
};

// What the monotone tester reads from one group of samples.
struct SampleGroup {
  std::uint64_t size = 0;
  std::uint64_t ones = 0;
  std::optional<PointId> first_zero;
  // Set by the literal path: 1-sample ids in sample order, at most max_lead.
  std::vector<PointId> lead;
  bool materialized = false;
};

struct SampleStage {
  std::vector<SampleGroup> groups;
  std::vector<PointId> zero_points;  // distinct 0-points seen in any group, ascending
  std::uint64_t zero_samples = 0;    // number of 0-samples over all groups
};

class SamplingOracle {
 public:
  virtual ~SamplingOracle() = default;
  [[nodiscard]] virtual std::size_t n() const = 0;
  virtual QueryTranscript& transcript() = 0;

  // One labeled sample; charges one sample.
  virtual LabeledDraw draw(Rng& rng) = 0;
  [[nodiscard]] virtual const ZeroSet& point(PointId id) const = 0;

  // Draws groups*group_size samples (charged up front).
  virtual SampleStage draw_stage(std::uint64_t groups, std::uint64_t group_size,
                                 std::uint64_t max_lead, Rng& rng) {
    transcript().charge_samples(checked_product(groups, group_size));
    SampleStage stage;
    stage.groups.resize(groups);
    std::set<PointId> zeros;
    for (auto& g : stage.groups) {
      g.size = group_size;
      g.materialized = true;
      for (std::uint64_t j = 0; j < group_size; ++j) {
        const auto s = draw_uncharged(rng);
        if (s.label) {
          ++g.ones;
          if (g.lead.size() < max_lead) g.lead.push_back(s.id);
        } else {
          ++stage.zero_samples;
          if (!g.first_zero) g.first_zero = s.id;
          zeros.insert(s.id);
        }
      }
    }
    stage.zero_points.assign(zeros.begin(), zeros.end());
    return stage;
  }

  // Distinct ids among the first k 1-samples of the group, ascending.
  // Requires k <= group.ones.
  virtual std::vector<PointId> lead_ones(const SampleGroup& group, std::uint64_t k, Rng&) {
    if (!group.materialized || k > group.lead.size()) throw Error("lead samples not available");
    std::vector<PointId> ids(group.lead.begin(), group.lead.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

 protected:
  // A sample whose cost was already charged by draw_stage.
  virtual LabeledDraw draw_uncharged(Rng& rng) = 0;

  static std::uint64_t checked_product(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > UINT64_MAX / b) throw Error("sample count overflows 64 bits");
    return a * b;
  }
};

// Conditional binomial chain for multinomial draws over a fixed category
// list. Distribution objects are cached per (category, remaining trials),
// which pays off because the remaining count concentrates tightly.
class MultinomialChain {
 public:
  MultinomialChain() = default;
  // conditional[c] = w_c / (w_c + ... + w_last); weights are the w_c.
  MultinomialChain(std::vector<double> conditional, const std::vector<double>& weights)
      : cond_(std::move(conditional)) {
    for (double w : weights) log_miss_.push_back(std::log1p(-std::min(w, 1.0)));
  }

  // Categories hit at least once in `trials` draws, ascending. When the
  // chance that any category is missed is below 2^-53 (under the resolution
  // of the double-precision draws), every category is returned without
  // consuming randomness.
  std::vector<std::size_t> support(std::uint64_t trials, Rng& rng) {
    std::vector<std::size_t> out;
    if (trials != last_trials_) {
      double miss = 0;
      for (double lm : log_miss_) miss += std::exp(static_cast<double>(trials) * lm);
      last_trials_ = trials;
      last_full_ = miss < 0x1p-53;
    }
    if (last_full_) {
      for (std::size_t c = 0; c < cond_.size(); ++c) out.push_back(c);
      return out;
    }
    draw(trials, rng, true, [&](std::size_t c, std::uint64_t) { out.push_back(c); });
    return out;
  }

  // Calls visit(category, count) for every category with a positive count.
  template <typename Visit>
  void draw(std::uint64_t trials, Rng& rng, bool cache, Visit&& visit) {
    std::uint64_t remaining = trials;
    for (std::size_t c = 0; c < cond_.size() && remaining > 0; ++c) {
      std::uint64_t x;
      const double p = cond_[c];
      if (p >= 1.0) {
        x = remaining;
      } else if (cache && remaining < (std::uint64_t{1} << 40)) {
        const std::uint64_t key = (static_cast<std::uint64_t>(c) << 40) | remaining;
        auto it = cache_.find(key);
        if (it == cache_.end()) {
          if (cache_.size() > kMaxCache) cache_.clear();
          it = cache_.emplace(key, std::binomial_distribution<std::uint64_t>(remaining, p)).first;
        }
        x = it->second(rng);
      } else {
        x = rng.binomial(remaining, p);
      }
      if (x > 0) visit(c, x);
      remaining -= x;
    }
  }

 private:
  static constexpr std::size_t kMaxCache = 1 << 20;
  std::vector<double> cond_;
  std::vector<double> log_miss_;
  std::uint64_t last_trials_ = UINT64_MAX;
  bool last_full_ = false;
  std::unordered_map<std::uint64_t, std::binomial_distribution<std::uint64_t>> cache_;
};

// Immutable precomputation for sampling (f, D) with finite D; shareable
// across threads.
class SamplingModel {
 public:
  SamplingModel(const FunctionSpec& f, const FiniteDistribution& D) : n_(D.n()) {
    if (f.n() != D.n()) throw Error("dimension mismatch between function and distribution");
    const auto& entries = D.entries();
    BigInt denom = 1;
    for (const auto& e : entries) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), e.weight.get_den_mpz_t());
    denom_ = denom;
    BigInt acc = 0;
    Rational ones_mass = 0;
    for (const auto& e : entries) {
      points_.push_back(e.point);
      labels_.push_back(f.eval(e.point));
      acc += e.weight.get_num() * (denom / e.weight.get_den());
      cum_.push_back(acc);
      if (labels_.back()) ones_mass += e.weight;
    }
    small_ = mpz_sizeinbase(denom_.get_mpz_t(), 2) <= 127;
    if (small_) {
      denom128_ = to_u128(denom_);
      for (const auto& c : cum_) cum128_.push_back(to_u128(c));
    }
    p_one_ = ones_mass.get_d();
    build_class(true, ones_mass, one_ids_, one_cond_, one_cdf_, one_w_);
    build_class(false, 1 - ones_mass, zero_ids_, zero_cond_, zero_cdf_, zero_w_);
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const ZeroSet& point(PointId id) const { return points_.at(id); }
  [[nodiscard]] bool label(PointId id) const { return labels_.at(id); }
  [[nodiscard]] double p_one() const { return p_one_; }
  [[nodiscard]] const std::vector<PointId>& one_ids() const { return one_ids_; }
  [[nodiscard]] const std::vector<PointId>& zero_ids() const { return zero_ids_; }
  [[nodiscard]] const std::vector<double>& one_conditional() const { return one_cond_; }
  [[nodiscard]] const std::vector<double>& zero_conditional() const { return zero_cond_; }
  // Weights within each class, i.e. D(x | f(x) = b).
  [[nodiscard]] const std::vector<double>& one_weights() const { return one_w_; }
  [[nodiscard]] const std::vector<double>& zero_weights() const { return zero_w_; }

  // Exact draw: uniform integer u in [0, L) for the common denominator L,
  // then the first point whose cumulative numerator exceeds u.
  [[nodiscard]] PointId draw_exact(Rng& rng) const {
    if (small_) {
      const unsigned __int128 L = denom128_;
      const unsigned __int128 reject_below = (-L) % L;  // 2^128 mod L
      unsigned __int128 u;
      do u = rng.next_u128();
      while (u < reject_below);
      u %= L;
      return static_cast<PointId>(std::upper_bound(cum128_.begin(), cum128_.end(), u) - cum128_.begin());
    }
    const std::size_t bits = mpz_sizeinbase(denom_.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    BigInt u;
    do {
      u = 0;
      for (std::size_t w = 0; w < words; ++w) {
        u <<= 64;
        u += from_u64(rng());
      }
      mpz_fdiv_r_2exp(u.get_mpz_t(), u.get_mpz_t(), bits);
    } while (u >= denom_);
    return static_cast<PointId>(std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
  }

  // Draw from D conditioned on f = 0 (double precision).
  [[nodiscard]] PointId draw_zero(Rng& rng) const {
    const double u = rng.unit();
    auto it = std::upper_bound(zero_cdf_.begin(), zero_cdf_.end(), u);
    if (it == zero_cdf_.end()) --it;
    return zero_ids_[static_cast<std::size_t>(it - zero_cdf_.begin())];
  }

 private:
  static unsigned __int128 to_u128(const BigInt& z) {
    BigInt hi = z >> 64;
    BigInt lo = z - (hi << 64);
    return (static_cast<unsigned __int128>(to_u64(hi)) << 64) | to_u64(lo);
  }

  void build_class(bool label, const Rational& mass, std::vector<PointId>& ids,
                   std::vector<double>& cond, std::vector<double>& cdf, std::vector<double>& within) const {
    if (mass == 0) return;
    std::vector<Rational> w;
    for (PointId id = 0; id < points_.size(); ++id) {
      if (labels_[id] != label) continue;
      ids.push_back(id);
    }
    // Recover each weight from the cumulative numerators.
    for (PointId id : ids) {
      BigInt num = cum_[id] - (id == 0 ? BigInt(0) : cum_[id - 1]);
      w.emplace_back(num, denom_);
    }
    Rational tail = mass;
    Rational acc = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Rational c = w[k] / tail;
      cond.push_back(k + 1 == ids.size() ? 1.0 : c.get_d());
      tail -= w[k];
      acc += w[k];
      Rational frac = acc / mass;
      cdf.push_back(frac.get_d());
      Rational share = w[k] / mass;
      within.push_back(share.get_d());
    }
  }

  std::size_t n_;
  std::vector<ZeroSet> points_;
  std::vector<bool> labels_;
  BigInt denom_;
  std::vector<BigInt> cum_;
  bool small_ = false;
  unsigned __int128 denom128_ = 0;
  std::vector<unsigned __int128> cum128_;
  double p_one_ = 0;
  std::vector<PointId> one_ids_, zero_ids_;
  std::vector<double> one_cond_, zero_cond_, one_cdf_, zero_cdf_, one_w_, zero_w_;
};

// Sampling oracle for a finite distribution. With compressed stages (the
// default) each group is generated from its sufficient statistics:
//   ones ~ Bin(size, D(f^{-1}(1))), first 0-sample ~ D conditioned on 0,
//   distinct lead 1-samples ~ support of Multinomial(k, D conditioned on 1),
// and the remaining 0-samples of all groups are pooled into one multinomial
// to decide which 0-points occur. This matches the literal draw in
// distribution, up to double-precision binomial and categorical draws.
class FiniteSampler final : public SamplingOracle {
 public:
  FiniteSampler(std::shared_ptr<const SamplingModel> model, QueryTranscript& t, bool compressed = true)
      : model_(std::move(model)), t_(t), compressed_(compressed),
        ones_chain_(model_->one_conditional(), model_->one_weights()),
        zeros_chain_(model_->zero_conditional(), model_->zero_weights()) {}

  FiniteSampler(const FunctionSpec& f, const FiniteDistribution& D, QueryTranscript& t, bool compressed = true)
      : FiniteSampler(std::make_shared<const SamplingModel>(f, D), t, compressed) {}

  [[nodiscard]] std::size_t n() const override { return model_->n(); }
  QueryTranscript& transcript() override { return t_; }
  [[nodiscard]] const SamplingModel& model() const { return *model_; }

  LabeledDraw draw(Rng& rng) override {
    t_.charge_samples(1);
    return draw_uncharged(rng);
  }

  [[nodiscard]] const ZeroSet& point(PointId id) const override { return model_->point(id); }

  SampleStage draw_stage(std::uint64_t groups, std::uint64_t group_size, std::uint64_t max_lead,
                         Rng& rng) override {
    if (!compressed_) return SamplingOracle::draw_stage(groups, group_size, max_lead, rng);
    t_.charge_samples(checked_product(groups, group_size));
    const double p1 = model_->p_one();
    std::binomial_distribution<std::uint64_t> ones_dist(group_size, std::clamp(p1, 0.0, 1.0));
    SampleStage stage;
    stage.groups.resize(groups);
    std::vector<bool> seen(model_->size(), false);
    std::uint64_t rest = 0;
    for (auto& g : stage.groups) {
      g.size = group_size;
      g.ones = p1 >= 1.0 ? group_size : p1 <= 0.0 ? 0 : ones_dist(rng);
      const std::uint64_t zeros = group_size - g.ones;
      stage.zero_samples += zeros;
      if (zeros > 0) {
        g.first_zero = model_->draw_zero(rng);
        seen[*g.first_zero] = true;
        rest += zeros - 1;
      }
    }
    const auto& zero_ids = model_->zero_ids();
    zeros_chain_.draw(rest, rng, false, [&](std::size_t c, std::uint64_t) { seen[zero_ids[c]] = true; });
    for (PointId id = 0; id < seen.size(); ++id)
      if (seen[id]) stage.zero_points.push_back(id);
    return stage;
  }

  std::vector<PointId> lead_ones(const SampleGroup& group, std::uint64_t k, Rng& rng) override {
    if (group.materialized) return SamplingOracle::lead_ones(group, k, rng);
    if (k > group.ones) throw Error("group has fewer 1-samples than requested");
    std::vector<PointId> ids;
    const auto& one_ids = model_->one_ids();
    for (std::size_t c : ones_chain_.support(k, rng)) ids.push_back(one_ids[c]);
    return ids;  // one_ids ascending, so ids ascending
  }

 protected:
  LabeledDraw draw_uncharged(Rng& rng) override {
    const PointId id = model_->draw_exact(rng);
    return {id, model_->label(id)};
  }

 private:
  std::shared_ptr<const SamplingModel> model_;
  QueryTranscript& t_;
  bool compressed_;
  MultinomialChain ones_chain_, zeros_chain_;
};

// Sampler for (g, D^(C)) given a sampler for (f, D): a sample x of D
// becomes x^(C) with the same label, since g(x^(C)) = f(x). Ids are shared
// with the inner sampler; each flipped sample consumes one inner sample.
class FlippedSampler final : public SamplingOracle {
 public:
  FlippedSampler(SamplingOracle& inner, std::vector<Index> C)
      : inner_(inner), c_(normalize_indices(std::move(C), inner.n())) {}

  [[nodiscard]] std::size_t n() const override { return inner_.n(); }
  QueryTranscript& transcript() override { return inner_.transcript(); }
  LabeledDraw draw(Rng& rng) override { return inner_.draw(rng); }

  [[nodiscard]] const ZeroSet& point(PointId id) const override {
    auto it = flipped_.find(id);
    if (it == flipped_.end()) it = flipped_.emplace(id, inner_.point(id).flipped(c_)).first;
    return it->second;
  }

  SampleStage draw_stage(std::uint64_t groups, std::uint64_t group_size, std::uint64_t max_lead,
                         Rng& rng) override {
    return inner_.draw_stage(groups, group_size, max_lead, rng);
  }

  std::vector<PointId> lead_ones(const SampleGroup& group, std::uint64_t k, Rng& rng) override {
    return inner_.lead_ones(group, k, rng);
  }

 protected:
  LabeledDraw draw_uncharged(Rng&) override { throw Error("unreachable"); }

 private:
  SamplingOracle& inner_;
  std::vector<Index> c_;
  mutable std::unordered_map<PointId, ZeroSet> flipped_;
};

struct LabeledPoint {
  ZeroSet point;
  bool label = false;
};

inline LabeledPoint draw_sample(SamplingOracle& sampler, Rng& rng) {
  const auto s = sampler.draw(rng);
  return {sampler.point(s.id), s.label};
}

}  // namespace subcube
