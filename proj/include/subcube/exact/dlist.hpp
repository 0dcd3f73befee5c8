#pragma once

// Decision-list consistency by the greedy rule: while points remain, pick a
// literal whose satisfied remaining points all carry one label, emit the
// rule, and discard them. A consistent list exists iff this never gets
// stuck (a literal usable now stays usable after other removals, so the
// choice order does not matter).

#include <optional>
#include <set>
#include <vector>

#include "subcube/exact/labeled_sample.hpp"
#include "subcube/function.hpp"

namespace subcube {

inline constexpr std::size_t kMaxDlistPoints = 64;
inline constexpr std::size_t kMaxFlipPoints = 16;

// A consistent decision list, or nullopt.
inline std::optional<FunctionSpec> learn_decision_list(const LabeledSample& s) {
  if (s.size() > kMaxDlistPoints) throw Error("decision-list check limited to 64 points");
  const std::size_t n = s.n();
  std::set<Index> coords;
  for (const auto& p : s.points()) coords.insert(p.point.zeros().begin(), p.point.zeros().end());
  std::vector<bool> alive(s.size(), true);
  std::size_t remaining = s.size();
  std::vector<DecisionRule> rules;
  while (remaining > 0) {
    std::optional<bool> common;
    bool uniform = true;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!alive[k]) continue;
      if (common && *common != s[k].label) uniform = false;
      common = s[k].label;
    }
    if (uniform) return FunctionSpec::decision_list(n, std::move(rules), *common);
    bool progressed = false;
    for (Index i : coords) {
      for (bool positive : {true, false}) {
        std::optional<bool> label;
        bool ok = true, any = false;
        for (std::size_t k = 0; k < s.size() && ok; ++k) {
          if (!alive[k] || s[k].point.bit(i) != positive) continue;
          any = true;
          if (label && *label != s[k].label) ok = false;
          label = s[k].label;
        }
        if (!ok || !any) continue;
        rules.push_back({{i, positive}, *label});
        for (std::size_t k = 0; k < s.size(); ++k)
          if (alive[k] && s[k].point.bit(i) == positive) {
            alive[k] = false;
            --remaining;
          }
        progressed = true;
        break;
      }
      if (progressed) break;
    }
    // Coordinates that are 1 on every point only offer a literal matching
    // all remaining points, which is covered by the uniform test above.
    if (!progressed) return std::nullopt;
  }
  return FunctionSpec::decision_list(n, std::move(rules), false);
}

inline bool dlist_consistent(const LabeledSample& s) { return learn_decision_list(s).has_value(); }

struct FlipFit {
  Rational distance;
  std::uint64_t flipped = 0;  // bit k set: label of point k flipped
};

template <typename Consistent>
FlipFit min_weight_flip(const LabeledSample& s, Consistent&& consistent) {
  if (s.size() > kMaxFlipPoints) throw Error("flip search limited to 16 points");
  for (std::uint64_t mask : detail::subsets_by_weight(s))
    if (consistent(s.flipped_labels(mask))) return {detail::mask_weight(s, mask), mask};
  throw Error("internal error: no flip subset is consistent");
}

inline FlipFit fit_decision_list(const LabeledSample& s) {
  return min_weight_flip(s, [](const LabeledSample& t) { return dlist_consistent(t); });
}

inline Rational exact_distance_dlist(const LabeledSample& s) { return fit_decision_list(s).distance; }

}  // namespace subcube
