#pragma once

// The strong sampling oracle of the lower-bound argument and the
// black-box-free responder it enables. A strong sample of c^k reveals the
// pair (C_k, alpha_k); any other sample x reveals only ZERO(x). Given R and
// the revealed alphas Gamma, the responder answers
//   p(z) = 0  iff  z has a 0 outside R or a 0 in Gamma,
// which agrees with f on every query with high probability when the number
// of queries is small.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "subcube/adversarial/generate.hpp"
#include "subcube/oracle.hpp"

namespace subcube {

struct StrongSample {
  std::vector<Index> D_set;
  std::optional<Index> gamma;
};

inline bool simulate_p(const ZeroSet& z, std::span<const Index> R, std::span<const Index> gamma) {
  for (Index j : z.zeros()) {
    if (!std::binary_search(R.begin(), R.end(), j)) return false;
    if (std::binary_search(gamma.begin(), gamma.end(), j)) return false;
  }
  return true;
}

// Maps support ids of a sampling model of an instance to the triple index k
// when the support point is c^k.
inline std::vector<std::int64_t> c_point_owners(const SamplingModel& model, const LBInstance& inst) {
  std::map<ZeroSet, std::size_t> by_point;
  for (std::size_t k = 0; k < inst.m(); ++k) by_point.emplace(inst.c_point(k), k);
  std::vector<std::int64_t> owner(model.size(), -1);
  for (PointId id = 0; id < model.size(); ++id) {
    auto it = by_point.find(model.point(id));
    if (it != by_point.end()) owner[id] = static_cast<std::int64_t>(it->second);
  }
  return owner;
}

class StrongSampler {
 public:
  // With resample_ones_string, draws of 1^n (LTF variants) are redrawn until
  // a point of the triple family appears; each strong sample still costs one.
  StrongSampler(const GeneratedInstance& g, QueryTranscript& t, bool resample_ones_string = false)
      : inst_(g.instance), model_(std::make_shared<const SamplingModel>(g.f, g.D)), t_(t),
        resample_(resample_ones_string), owner_(c_point_owners(*model_, *inst_)) {}

  StrongSample draw(Rng& rng) {
    t_.charge_samples(1);
    PointId id = model_->draw_exact(rng);
    while (resample_ && model_->point(id).size() == 0) id = model_->draw_exact(rng);
    const auto k = owner_[id];
    if (k >= 0) return {inst_->C[static_cast<std::size_t>(k)], inst_->alpha[static_cast<std::size_t>(k)]};
    return {model_->point(id).zeros(), std::nullopt};
  }

 private:
  std::shared_ptr<const LBInstance> inst_;
  std::shared_ptr<const SamplingModel> model_;
  QueryTranscript& t_;
  bool resample_;
  std::vector<std::int64_t> owner_;
};

// Gamma accumulated from the samples seen so far. Shared between a
// revealing sampler and the simulated responder.
struct RevealedAlphas {
  std::set<Index> set;
  std::vector<Index> sorted;

  void add(Index a) {
    if (set.insert(a).second) sorted.assign(set.begin(), set.end());
  }
};

// Ordinary sampling oracle over an instance that additionally records the
// alpha revealed by every c^k it hands out, i.e. the strong-oracle view of
// the same samples. Only 0-points can be c^k, and the compressed stage
// reports every distinct 0-point, so Gamma is exact.
class RevealingSampler final : public SamplingOracle {
 public:
  RevealingSampler(std::shared_ptr<const LBInstance> inst, std::shared_ptr<const SamplingModel> model,
                   QueryTranscript& t, std::shared_ptr<RevealedAlphas> gamma, bool compressed = true)
      : inst_(std::move(inst)), model_(std::move(model)), inner_(model_, t, compressed),
        owner_(c_point_owners(*model_, *inst_)), gamma_(std::move(gamma)) {}
  RevealingSampler(const GeneratedInstance& g, QueryTranscript& t, std::shared_ptr<RevealedAlphas> gamma,
                   bool compressed = true)
      : RevealingSampler(g.instance, std::make_shared<const SamplingModel>(g.f, g.D), t, std::move(gamma),
                         compressed) {}

  [[nodiscard]] std::size_t n() const override { return inner_.n(); }
  QueryTranscript& transcript() override { return inner_.transcript(); }
  [[nodiscard]] const ZeroSet& point(PointId id) const override { return inner_.point(id); }

  LabeledDraw draw(Rng& rng) override {
    const auto s = inner_.draw(rng);
    reveal(s.id);
    return s;
  }

  SampleStage draw_stage(std::uint64_t groups, std::uint64_t group_size, std::uint64_t max_lead,
                         Rng& rng) override {
    auto stage = inner_.draw_stage(groups, group_size, max_lead, rng);
    for (PointId id : stage.zero_points) reveal(id);
    return stage;
  }

  std::vector<PointId> lead_ones(const SampleGroup& group, std::uint64_t k, Rng& rng) override {
    auto ids = inner_.lead_ones(group, k, rng);
    for (PointId id : ids) reveal(id);
    return ids;
  }

 protected:
  LabeledDraw draw_uncharged(Rng&) override { throw Error("unreachable"); }

 private:
  void reveal(PointId id) {
    if (owner_[id] >= 0) gamma_->add(inst_->alpha[static_cast<std::size_t>(owner_[id])]);
  }

  std::shared_ptr<const LBInstance> inst_;
  std::shared_ptr<const SamplingModel> model_;
  FiniteSampler inner_;
  std::vector<std::int64_t> owner_;
  std::shared_ptr<RevealedAlphas> gamma_;
};

// Answers queries with p(z, R, Gamma) instead of f; charges like a real
// black-box oracle.
class SimulatedOracle final : public BlackBoxOracle {
 public:
  SimulatedOracle(std::shared_ptr<const LBInstance> inst, QueryTranscript& t, std::shared_ptr<RevealedAlphas> gamma)
      : inst_(std::move(inst)), t_(t), gamma_(std::move(gamma)) {}

  [[nodiscard]] std::size_t n() const override { return inst_->n(); }
  bool query(const ZeroSet& x) override {
    t_.check_query_budget();
    const bool answer = simulate_p(x, inst_->R, gamma_->sorted);
    t_.record_query(x, answer);
    return answer;
  }
  QueryTranscript& transcript() override { return t_; }

 private:
  std::shared_ptr<const LBInstance> inst_;
  QueryTranscript& t_;
  std::shared_ptr<RevealedAlphas> gamma_;
};

}  // namespace subcube
