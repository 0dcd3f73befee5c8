#pragma once

// YES/NO distinguishing experiment under a hard per-oracle budget q. Each
// side draws `trials` instances once (trial i of side s uses
// Rng(seed).split(s).split(i)); the same instances and tester streams are
// reused at every budget, so the curve over q is a common-random-numbers
// sweep. Alongside the real black-box oracle, every run is repeated with
// the responder p(z, R, Gamma), which never looks at f.

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "subcube/adversarial/generate.hpp"
#include "subcube/adversarial/strong_oracle.hpp"
#include "subcube/harness/trials.hpp"

namespace subcube {

struct DistinguishConfig {
  TesterConfig tester;  // budgets inside are ignored; see budgets below
  LBVariant yes_variant = LBVariant::yes;
  LBVariant no_variant = LBVariant::no;
  LBParams params;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::optional<std::uint64_t>> budgets;  // nullopt: unbounded
  bool simulate = true;
  std::size_t threads = 0;
};

struct BudgetPoint {
  std::optional<std::uint64_t> budget;
  double yes_accept = 0, no_accept = 0, gap = 0;
  double sim_yes_accept = 0, sim_no_accept = 0;
  std::uint64_t max_blackbox = 0, max_samples = 0;  // over real-oracle runs
};

struct DistinguishReport {
  std::vector<BudgetPoint> points;
  // Smallest budget with a positive gap, if any.
  std::optional<std::optional<std::uint64_t>> transition;
};

inline void check_variant_pair(LBVariant yes, LBVariant no) {
  const bool plain = yes == LBVariant::yes && no == LBVariant::no;
  const bool ltf = yes == LBVariant::yes_ltf && no == LBVariant::no_ltf;
  if (!plain && !ltf) throw Error("variant pair must be yes:no or yes-ltf:no-ltf");
}

inline std::pair<LBVariant, LBVariant> parse_variant_pair(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error("variant pair must look like yes:no");
  const auto pair = std::make_pair(parse_variant(s.substr(0, colon)), parse_variant(s.substr(colon + 1)));
  check_variant_pair(pair.first, pair.second);
  return pair;
}

namespace detail {

struct PreparedInstance {
  GeneratedInstance g;
  std::shared_ptr<const SamplingModel> model;
};

struct RunOutcome {
  bool accepted = true;
  std::uint64_t blackbox = 0, samples = 0;
};

inline RunOutcome run_budgeted(const TesterConfig& base, const PreparedInstance& inst,
                               std::optional<std::uint64_t> q, bool simulated, const Rng& rng) {
  QueryTranscript t;
  t.blackbox_budget = q;
  t.sample_budget = q;
  Verdict v;
  if (simulated) {
    auto gamma = std::make_shared<RevealedAlphas>();
    RevealingSampler sampler(inst.g.instance, inst.model, t, gamma);
    SimulatedOracle oracle(inst.g.instance, t, gamma);
    v = run_tester(base, oracle, sampler, rng);
  } else {
    FiniteSampler sampler(inst.model, t);
    FunctionOracle oracle(inst.g.f, t);
    v = run_tester(base, oracle, sampler, rng);
  }
  if (q && (t.blackbox_count > *q || t.sample_count > *q)) throw Error("internal error: budget exceeded");
  return {v.accepted, t.blackbox_count, t.sample_count};
}

}  // namespace detail

inline DistinguishReport distinguishing_experiment(const DistinguishConfig& cfg) {
  check_variant_pair(cfg.yes_variant, cfg.no_variant);
  if (cfg.budgets.empty()) throw Error("need at least one budget");
  std::vector<detail::PreparedInstance> yes, no;
  for (int side = 0; side < 2; ++side) {
    auto& target = side == 0 ? yes : no;
    const LBVariant variant = side == 0 ? cfg.yes_variant : cfg.no_variant;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
      Rng gen = Rng(cfg.seed).split(static_cast<std::uint64_t>(side)).split(i).split(0);
      auto g = generate(cfg.params, variant, gen);
      auto model = std::make_shared<const SamplingModel>(g.f, g.D);
      target.push_back({std::move(g), std::move(model)});
    }
  }
  DistinguishReport report;
  for (const auto& q : cfg.budgets) {
    // outcomes[side][sim][trial]
    std::vector<detail::RunOutcome> out(4 * cfg.trials);
    const std::uint64_t jobs = (cfg.simulate ? 4 : 2) * cfg.trials;
    parallel_for(jobs, cfg.threads, [&](std::uint64_t job) {
      const std::uint64_t trial = job % cfg.trials;
      const std::uint64_t side = (job / cfg.trials) % 2;
      const bool sim = job / cfg.trials >= 2;
      const Rng rng = Rng(cfg.seed).split(side).split(trial).split(1);
      out[job] = detail::run_budgeted(cfg.tester, (side == 0 ? yes : no)[trial], q, sim, rng);
    });
    auto rate = [&](std::uint64_t block) {
      if (cfg.trials == 0) return 0.0;
      std::uint64_t acc = 0;
      for (std::uint64_t i = 0; i < cfg.trials; ++i) acc += out[block * cfg.trials + i].accepted;
      return static_cast<double>(acc) / static_cast<double>(cfg.trials);
    };
    BudgetPoint pt;
    pt.budget = q;
    pt.yes_accept = rate(0);
    pt.no_accept = rate(1);
    pt.gap = pt.yes_accept - pt.no_accept;
    if (cfg.simulate) {
      pt.sim_yes_accept = rate(2);
      pt.sim_no_accept = rate(3);
    }
    for (std::uint64_t j = 0; j < 2 * cfg.trials; ++j) {
      pt.max_blackbox = std::max(pt.max_blackbox, out[j].blackbox);
      pt.max_samples = std::max(pt.max_samples, out[j].samples);
    }
    if (!report.transition && pt.gap > 0) report.transition = q;
    report.points.push_back(pt);
  }
  return report;
}

inline constexpr const char* kCurveHeader =
    "budget,yes_accept,no_accept,gap,sim_yes_accept,sim_no_accept,max_blackbox_queries,max_sample_queries";

inline std::string format_budget(const std::optional<std::uint64_t>& q) { return q ? std::to_string(*q) : "inf"; }

inline void write_curve_csv(std::ostream& out, const DistinguishReport& rep) {
  out << kCurveHeader << '\n';
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(6);
    s << std::fixed << v;
    return s.str();
  };
  for (const auto& p : rep.points)
    out << format_budget(p.budget) << ',' << num(p.yes_accept) << ',' << num(p.no_accept) << ',' << num(p.gap)
        << ',' << num(p.sim_yes_accept) << ',' << num(p.sim_no_accept) << ',' << p.max_blackbox << ','
        << p.max_samples << '\n';
}

// 0 and powers of two up to `top`, then unbounded.
inline std::vector<std::optional<std::uint64_t>> default_budget_sweep(std::uint64_t top) {
  std::vector<std::optional<std::uint64_t>> out{0};
  for (std::uint64_t q = 1; q <= top; q *= 2) out.emplace_back(q);
  out.emplace_back(std::nullopt);
  return out;
}

}  // namespace subcube
