#pragma once

// Seeded batches of tester runs. Trial i uses the substream
// Rng(seed).split(i); within a trial, split(0) draws the instance (when a
// generator is used) and split(1) drives the tester. Trials may run on
// several threads, but rows come back ordered by trial id and depend only
// on (config, seed), so the CSV is byte-identical across runs unless wall
// times are requested.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "subcube/oracle.hpp"
#include "subcube/tester/amplify.hpp"
#include "subcube/tester/dolev_ron.hpp"
#include "subcube/tester/general.hpp"
#include "subcube/tester/monotone.hpp"

namespace subcube {

enum class Algo { mconj, conj, dolev_ron };

inline std::string to_string(Algo a) {
  switch (a) {
    case Algo::mconj: return "mconj";
    case Algo::conj: return "conj";
    case Algo::dolev_ron: return "dolev-ron";
  }
  return "?";
}

inline Algo parse_algo(const std::string& s) {
  if (s == "mconj") return Algo::mconj;
  if (s == "conj") return Algo::conj;
  if (s == "dolev-ron") return Algo::dolev_ron;
  throw Error("unknown algorithm: " + s);
}

inline constexpr double kDefaultDolevRonMultiplier = 1.0;

struct TesterConfig {
  Algo algo = Algo::mconj;
  Rational epsilon = Rational(1, 2);
  std::uint64_t amplify = 1;
  double dolev_ron_c = kDefaultDolevRonMultiplier;
  std::optional<std::uint64_t> blackbox_budget, sample_budget;
  bool logging = false;
};

// One (possibly amplified) tester run; all runs share transcript t.
inline Verdict run_tester(const TesterConfig& cfg, BlackBoxOracle& oracle, SamplingOracle& sampler, const Rng& rng) {
  if (cfg.epsilon <= 0 || cfg.epsilon > 1) throw Error("epsilon must lie in (0, 1]");
  std::optional<TesterParams> params;
  if (cfg.algo == Algo::mconj) params = compute_parameters(oracle.n(), cfg.epsilon);
  return amplify(
      [&](Rng& r) {
        switch (cfg.algo) {
          case Algo::mconj: return test_monotone_conjunction(oracle, sampler, *params, r);
          case Algo::conj: return test_general_conjunction(oracle, sampler, cfg.epsilon, r);
          case Algo::dolev_ron: return baseline_dolev_ron(oracle, sampler, cfg.dolev_ron_c, r);
        }
        throw Error("unknown algorithm");
      },
      cfg.amplify, rng);
}

struct TrialRow {
  std::uint64_t trial = 0;
  Verdict verdict;
  std::uint64_t wall_ms = 0;
  std::uint64_t logged_queries = 0;
  bool logged = false;
  std::vector<QueryLogEntry> log;  // kept only with TrialsConfig::keep_log
};

// A fixed instance, or a generator called once per trial.
struct InstanceSource {
  std::shared_ptr<const SamplingModel> fixed_model;
  std::shared_ptr<const FunctionSpec> fixed_f;
  std::function<std::pair<FunctionSpec, FiniteDistribution>(Rng&)> generate;

  static InstanceSource from_instance(const FunctionSpec& f, const FiniteDistribution& D) {
    InstanceSource s;
    s.fixed_f = std::make_shared<const FunctionSpec>(f);
    s.fixed_model = std::make_shared<const SamplingModel>(f, D);
    return s;
  }
  static InstanceSource from_generator(std::function<std::pair<FunctionSpec, FiniteDistribution>(Rng&)> g) {
    InstanceSource s;
    s.generate = std::move(g);
    return s;
  }
};

struct TrialsConfig {
  TesterConfig tester;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool timing = false;  // fill wall_ms; otherwise 0 for byte-stable output
  std::size_t threads = 0;  // 0: SUBCUBE_THREADS or hardware concurrency
  bool keep_log = false;
};

inline std::size_t worker_count(std::size_t requested, std::uint64_t jobs) {
  std::size_t w = requested;
  if (w == 0) {
    w = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SUBCUBE_THREADS")) {
      const long cap = std::strtol(env, nullptr, 10);
      if (cap > 0) w = std::min(w, static_cast<std::size_t>(cap));
    }
  }
  return static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(w, jobs)));
}

// Runs job(i) for i in [0, jobs) on a small pool; rethrows the first error.
inline void parallel_for(std::uint64_t jobs, std::size_t threads, const std::function<void(std::uint64_t)>& job) {
  const std::size_t workers = worker_count(threads, jobs);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < jobs; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = jobs;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline TrialRow run_single_trial(const TrialsConfig& cfg, const InstanceSource& source, std::uint64_t trial) {
  const Rng trial_rng = Rng(cfg.seed).split(trial);
  std::shared_ptr<const SamplingModel> model = source.fixed_model;
  std::shared_ptr<const FunctionSpec> f = source.fixed_f;
  if (source.generate) {
    Rng gen = trial_rng.split(0);
    auto [gf, gD] = source.generate(gen);
    model = std::make_shared<const SamplingModel>(gf, gD);
    f = std::make_shared<const FunctionSpec>(std::move(gf));
  }
  if (!model || !f) throw Error("trial has no instance");
  QueryTranscript t;
  t.blackbox_budget = cfg.tester.blackbox_budget;
  t.sample_budget = cfg.tester.sample_budget;
  t.logging = cfg.tester.logging;
  FunctionOracle oracle(*f, t);
  FiniteSampler sampler(model, t);
  const auto start = std::chrono::steady_clock::now();
  TrialRow row;
  row.trial = trial;
  row.verdict = run_tester(cfg.tester, oracle, sampler, trial_rng.split(1));
  if (cfg.timing)
    row.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  row.logged = t.logging;
  row.logged_queries = t.log.size();
  if (cfg.keep_log) row.log = std::move(t.log);
  return row;
}

inline std::vector<TrialRow> run_trials(const TrialsConfig& cfg, const InstanceSource& source) {
  std::vector<TrialRow> rows(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t i) { rows[i] = run_single_trial(cfg, source, i); });
  return rows;
}

inline constexpr const char* kCsvHeader = "trial,verdict,reason,blackbox_queries,sample_queries,wall_ms";

inline void write_csv_row(std::ostream& out, const TrialRow& r) {
  out << r.trial << ',' << r.verdict.outcome() << ',' << to_string(r.verdict.reason) << ','
      << r.verdict.blackbox_queries << ',' << r.verdict.sample_queries << ',' << r.wall_ms << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) write_csv_row(out, r);
}

inline std::string to_csv(const std::vector<TrialRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

struct TrialSummary {
  std::uint64_t trials = 0, accepted = 0;
  double accept_rate = 0;
  double mean_blackbox = 0, mean_samples = 0;
  std::uint64_t max_blackbox = 0, max_samples = 0;
};

inline TrialSummary summarize(const std::vector<TrialRow>& rows) {
  TrialSummary s;
  s.trials = rows.size();
  long double bb = 0, sm = 0;
  for (const auto& r : rows) {
    if (r.verdict.accepted) ++s.accepted;
    bb += r.verdict.blackbox_queries;
    sm += r.verdict.sample_queries;
    s.max_blackbox = std::max(s.max_blackbox, r.verdict.blackbox_queries);
    s.max_samples = std::max(s.max_samples, r.verdict.sample_queries);
  }
  if (s.trials) {
    s.accept_rate = static_cast<double>(s.accepted) / static_cast<double>(s.trials);
    s.mean_blackbox = static_cast<double>(bb / s.trials);
    s.mean_samples = static_cast<double>(sm / s.trials);
  }
  return s;
}

inline std::string format_summary(const TrialSummary& s) {
  std::ostringstream out;
  out << "trials=" << s.trials << " accepted=" << s.accepted << " accept_rate=" << s.accept_rate
      << " mean_blackbox=" << s.mean_blackbox << " max_blackbox=" << s.max_blackbox
      << " mean_samples=" << s.mean_samples << " max_samples=" << s.max_samples;
  return out.str();
}

struct BudgetViolation {
  std::uint64_t trial = 0;
  std::string what;
};

struct QueryBudgetReport {
  std::vector<BudgetViolation> violations;
  std::uint64_t checked = 0;
  double mean_ratio = 0;  // (blackbox + samples) / ((n^{1/3}/eps^5) log2^7(n/eps))
  double max_ratio = 0;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

inline double asymptotic_budget(std::uint64_t n, const Rational& eps) {
  const double e = to_double(eps);
  const double lg = std::log2(static_cast<double>(n) / e);
  return std::cbrt(static_cast<double>(n)) / std::pow(e, 5) * std::pow(lg, 7);
}

// Checks every single (unamplified) monotone-tester row against the exact
// sample count and the closed-form black-box bound.
inline QueryBudgetReport query_budget_report(const std::vector<TrialRow>& rows, const TesterParams& p) {
  QueryBudgetReport rep;
  const double scale = asymptotic_budget(p.n, p.epsilon);
  double total_ratio = 0;
  for (const auto& r : rows) {
    if (!r.logged) throw Error("query_budget_report needs rows produced with query logging on");
    const auto& v = r.verdict;
    auto fail = [&](const std::string& what) { rep.violations.push_back({r.trial, what}); };
    if (r.logged_queries != v.blackbox_queries) fail("query log length differs from black-box count");
    if (v.reason == Reason::stage0_allones) {
      if (v.blackbox_queries != 1 || v.sample_queries != 0) fail("stage0-allones must cost exactly one query");
    } else if (v.reason != Reason::budget_exhausted) {
      if (v.sample_queries != p.stage0_samples)
        fail("sample_count " + std::to_string(v.sample_queries) + " != " + std::to_string(p.stage0_samples));
      const BigInt bound = p.blackbox_bound(v.stage0_zero_samples);
      if (from_u64(v.blackbox_queries) > bound)
        fail("blackbox_count " + std::to_string(v.blackbox_queries) + " exceeds " + bound.get_str());
    }
    ++rep.checked;
    const double ratio = static_cast<double>(v.blackbox_queries + v.sample_queries) / scale;
    total_ratio += ratio;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  if (rep.checked) rep.mean_ratio = total_ratio / static_cast<double>(rep.checked);
  return rep;
}

}  // namespace subcube
