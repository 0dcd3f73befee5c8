#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "subcube/adversarial/generate.hpp"
#include "subcube/exact/conjunction.hpp"
#include "subcube/exact/dlist.hpp"
#include "subcube/exact/ltf.hpp"
#include "subcube/harness/distinguish.hpp"
#include "subcube/harness/trials.hpp"
#include "subcube/io.hpp"
#include "subcube/violation/bigraph.hpp"
#include "subcube/violation/prune.hpp"

using namespace subcube;

namespace {

std::string join(const std::vector<Index>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// Output goes to FILE when given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::optional<std::uint64_t> parse_budget(const std::string& s) {
  if (s == "inf") return std::nullopt;
  std::size_t pos = 0;
  const auto v = std::stoull(s, &pos);
  if (pos != s.size()) throw Error("bad budget: " + s);
  return v;
}

// "h=4,r_blocks=6,m=3,s=1,bps=1"
LBParams parse_scaled(std::size_t n, const std::string& spec) {
  std::map<std::string, std::size_t> kv;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("bad --scaled entry: " + item);
    kv[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
  }
  for (const char* key : {"h", "r_blocks", "m", "s", "bps"})
    if (!kv.count(key)) throw Error(std::string("--scaled needs ") + key);
  return scaled_params(n, kv["h"], kv["r_blocks"], kv["m"], kv["s"], kv["bps"]);
}

LBParams lower_bound_params(std::size_t n, const std::string& scaled, LBVariant variant, bool disjoint) {
  LBParams p = scaled.empty() ? asymptotic_params(n, variant) : parse_scaled(n, scaled);
  p.disjoint_pairs = disjoint;
  validate_params(p, variant);
  return p;
}

int cmd_test(const std::string& path, const std::string& algo, const std::string& eps, std::uint64_t seed,
             std::uint64_t amplify_k, bool log_queries, std::uint64_t trials, bool timing, double dr_c,
             const std::string& out_path) {
  const Instance inst = read_instance(path);
  TrialsConfig cfg;
  cfg.tester.algo = parse_algo(algo);
  cfg.tester.epsilon = parse_rational(eps);
  cfg.tester.amplify = amplify_k;
  cfg.tester.dolev_ron_c = dr_c;
  cfg.tester.logging = log_queries;
  cfg.keep_log = log_queries;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.timing = timing;
  const auto rows = run_trials(cfg, InstanceSource::from_instance(inst.f, inst.D));
  Sink sink(out_path);
  write_csv(sink.out(), rows);
  std::cerr << format_summary(summarize(rows)) << '\n';
  if (log_queries) {
    for (const auto& r : rows)
      for (const auto& q : r.log)
        std::cerr << "query trial=" << r.trial << " zeros=" << join(q.query.zeros()) << " -> " << q.answer << '\n';
    if (cfg.tester.algo == Algo::mconj && amplify_k == 1) {
      const auto rep = query_budget_report(rows, compute_parameters(inst.f.n(), cfg.tester.epsilon));
      std::cerr << "query budget: checked=" << rep.checked << " violations=" << rep.violations.size()
                << " mean_ratio=" << rep.mean_ratio << " max_ratio=" << rep.max_ratio << '\n';
      for (const auto& v : rep.violations) std::cerr << "  trial " << v.trial << ": " << v.what << '\n';
      if (!rep.ok()) return 3;
    }
  }
  return 0;
}

int cmd_distance(const std::string& path, const std::string& cls, bool witness) {
  const Instance inst = read_instance(path);
  const auto sample = LabeledSample::from(inst.f, inst.D);
  auto print_flips = [&](const FlipFit& fit) {
    std::cout << format_rational(fit.distance) << '\n';
    if (!witness) return;
    for (std::size_t k = 0; k < sample.size(); ++k)
      if (fit.flipped >> k & 1) std::cout << "flip zeros=" << join(sample[k].point.zeros()) << '\n';
  };
  if (cls == "mconj" || cls == "conj") {
    const auto fit = cls == "mconj" ? fit_monotone_conjunction(sample) : fit_general_conjunction(sample);
    std::cout << format_rational(fit.distance) << '\n';
    if (witness) {
      std::cout << "S=" << join(fit.S) << '\n';
      if (cls == "conj") std::cout << "S_neg=" << join(fit.S_neg) << (fit.all_zero ? " (all-0)" : "") << '\n';
    }
  } else if (cls == "dlist") {
    const auto fit = fit_decision_list(sample);
    print_flips(fit);
    if (witness)
      if (auto dl = learn_decision_list(sample.flipped_labels(fit.flipped)))
        std::cout << "list=" << function_to_json(*dl).dump() << '\n';
  } else if (cls == "ltf") {
    const auto fit = fit_ltf(sample);
    print_flips(fit);
    if (witness)
      if (auto sep = find_ltf_separator(sample.flipped_labels(fit.flipped))) {
        std::cout << "weights=";
        for (std::size_t i = 0; i < sep->weights.size(); ++i)
          std::cout << (i ? "," : "") << format_rational(sep->weights[i]);
        std::cout << "\nthreshold=" << format_rational(sep->threshold) << '\n';
      }
  } else {
    throw Error("unknown class: " + cls);
  }
  return 0;
}

void dump_graph(std::ostream& out, const ViolationGraph& G) {
  const auto deg = G.left_degrees();
  out << "n " << G.n << '\n';
  out << "left " << G.left.size() << '\n';
  for (std::size_t a = 0; a < G.left.size(); ++a)
    out << "L" << a << " zeros=" << join(G.left[a].point.zeros()) << " wt=" << format_rational(G.left[a].wt)
        << " deg=" << deg[a] << '\n';
  out << "right " << G.right.size() << '\n';
  for (std::size_t b = 0; b < G.right.size(); ++b)
    out << "R" << b << " j=" << G.right[b].j << " wt=" << format_rational(G.right[b].wt) << '\n';
  out << "edges " << G.edges.size() << '\n';
  for (const auto& [a, b] : G.edges) out << "L" << a << " R" << b << '\n';
  out << "empty " << G.empty_strings.size() << '\n';
  for (const auto& e : G.empty_strings)
    out << "E zeros=" << join(e.point.zeros()) << " wt=" << format_rational(e.weight) << '\n';
  out << "weight " << format_rational(G.weight()) << '\n';
}

int cmd_violation(const std::string& path, const std::string& eps_text, const std::string& emit,
                  const std::string& out_path) {
  const Instance inst = read_instance(path);
  const Rational eps = parse_rational(eps_text);
  const ViolationGraph G = build_violation_bigraph(inst.f, inst.D);
  Sink sink(out_path);
  auto& out = sink.out();
  if (emit == "graph") {
    dump_graph(out, G);
    return 0;
  }
  if (emit != "prune-report") throw Error("unknown --emit value: " + emit);
  const auto d = compute_parameters(inst.f.n(), eps).d;
  const auto rep = prune_to_regular(G, eps, d);
  out << "epsilon " << format_rational(eps) << "\nd " << d << '\n';
  out << "input_min_cover " << format_rational(min_weight_vertex_cover(G).weight) << '\n';
  out << "exit " << to_string(rep.exit_reason) << '\n';
  out << "rounds " << rep.rounds << '\n';
  out << "exit_cover_weight " << format_rational(rep.exit_cover_weight) << '\n';
  out << "removed " << rep.removed_S.size() << '\n';
  for (const auto& r : rep.removed_S)
    out << (r.is_left ? "L" : "R") << r.position << " wt=" << format_rational(r.wt) << " round=" << r.round << '\n';
  out << "W " << format_rational(rep.W) << '\n';
  out << "L_prime " << rep.L_prime.size() << '\n';
  out << "no_heavy_vertex " << (has_no_heavy_vertex(rep.G_star, d) ? "true" : "false") << '\n';
  if (rep.exit_reason == PruneExit::no_heavy_left || rep.G_star.edges.empty()) {
    const auto diag = regularity_diagnostics(rep, eps, d);
    out << "diag_wt_L_prime " << format_rational(diag.wt_L_prime) << '\n';
    out << "diag_min_cover " << format_rational(diag.min_cover) << '\n';
    out << "diag_W_at_least_eps_over_8 " << diag.W_at_least_eps_over_8 << '\n';
    out << "diag_L_prime_at_least_1_over_2d " << diag.L_prime_at_least_1_over_2d << '\n';
    out << "diag_cover_at_least_3eps_over_8 " << diag.cover_at_least_3eps_over_8 << '\n';
  }
  out << "G_star\n";
  dump_graph(out, rep.G_star);
  return 0;
}

int cmd_gen(const std::string& variant_text, std::size_t n, const std::string& scaled, std::uint64_t seed,
            const std::string& out_path, bool disjoint) {
  const LBVariant variant = parse_variant(variant_text);
  const LBParams p = lower_bound_params(n, scaled, variant, disjoint);
  Rng rng(seed);
  const auto g = generate(p, variant, rng);
  write_instance(out_path, g.f, g.D);
  write_json_file(sidecar_path(out_path), structure_to_json(*g.instance));
  std::cerr << "wrote " << out_path << " and " << sidecar_path(out_path) << " (support " << g.D.size() << ")\n";
  return 0;
}

int cmd_experiment(const std::string& algo, const std::string& pair, std::size_t n, const std::string& eps,
                   std::uint64_t trials, std::uint64_t seed, const std::vector<std::string>& budgets,
                   std::uint64_t amplify_k, const std::string& out_path, const std::string& scaled, double dr_c,
                   bool simulate) {
  DistinguishConfig cfg;
  cfg.tester.algo = parse_algo(algo);
  cfg.tester.epsilon = parse_rational(eps);
  cfg.tester.amplify = amplify_k;
  cfg.tester.dolev_ron_c = dr_c;
  std::tie(cfg.yes_variant, cfg.no_variant) = parse_variant_pair(pair);
  cfg.params = lower_bound_params(n, scaled, cfg.no_variant, false);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.simulate = simulate;
  if (budgets.empty()) {
    cfg.budgets = default_budget_sweep(std::uint64_t{1} << 16);
  } else {
    for (const auto& b : budgets) cfg.budgets.push_back(parse_budget(b));
  }
  const auto rep = distinguishing_experiment(cfg);
  Sink sink(out_path);
  write_curve_csv(sink.out(), rep);
  std::cerr << "transition: "
            << (rep.transition ? "first positive gap at budget " + format_budget(*rep.transition)
                               : std::string("no positive gap in sweep"))
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution-free conjunction testing toolkit"};
  app.require_subcommand(1);

  auto* test = app.add_subcommand("test", "run a tester on an instance file; prints CSV rows");
  std::string t_instance, t_algo = "mconj", t_eps = "1/2", t_out;
  std::uint64_t t_seed = 0, t_amp = 1, t_trials = 1;
  bool t_log = false, t_timing = false;
  double t_c = kDefaultDolevRonMultiplier;
  test->add_option("--instance", t_instance)->required();
  test->add_option("--algo", t_algo)->check(CLI::IsMember({"mconj", "conj", "dolev-ron"}));
  test->add_option("--epsilon", t_eps);
  test->add_option("--seed", t_seed);
  test->add_option("--amplify", t_amp)->check(CLI::PositiveNumber);
  test->add_flag("--log-queries", t_log, "print every black-box query to stderr and check the query budget");
  test->add_option("--trials", t_trials, "number of independent runs");
  test->add_flag("--timing", t_timing, "fill the wall_ms column");
  test->add_option("--dr-c", t_c, "Dolev-Ron sample multiplier c");
  test->add_option("--out", t_out, "CSV file (default stdout)");

  auto* dist = app.add_subcommand("distance", "exact distance of the instance to a class");
  std::string d_instance, d_class = "mconj";
  bool d_witness = false;
  dist->add_option("--instance", d_instance)->required();
  dist->add_option("--class", d_class)->check(CLI::IsMember({"mconj", "conj", "dlist", "ltf"}));
  dist->add_flag("--witness", d_witness);

  auto* viol = app.add_subcommand("violation", "violation bipartite graph and pruning");
  std::string v_instance, v_eps = "1/2", v_emit = "graph", v_out;
  viol->add_option("--instance", v_instance)->required();
  viol->add_option("--epsilon", v_eps);
  viol->add_option("--emit", v_emit)->check(CLI::IsMember({"graph", "prune-report"}));
  viol->add_option("--out", v_out);

  auto* gen = app.add_subcommand("gen-instance", "generate a lower-bound instance");
  std::string g_variant = "yes", g_scaled, g_out;
  std::size_t g_n = 0;
  std::uint64_t g_seed = 0;
  bool g_disjoint = false;
  gen->add_option("--variant", g_variant)->check(CLI::IsMember({"yes", "no", "yes-ltf", "no-ltf"}));
  gen->add_option("--n", g_n)->required();
  gen->add_option("--scaled", g_scaled, "h=..,r_blocks=..,m=..,s=..,bps=..");
  gen->add_option("--seed", g_seed);
  gen->add_option("--out", g_out)->required();
  gen->add_flag("--disjoint-pairs", g_disjoint, "C_{2i-1} and C_{2i} use disjoint blocks");

  auto* exp = app.add_subcommand("experiment", "YES/NO distinguishing sweep over query budgets");
  std::string e_algo = "mconj", e_pair = "yes:no", e_eps = "1/2", e_out, e_scaled;
  std::size_t e_n = 0;
  std::uint64_t e_trials = 100, e_seed = 0, e_amp = 1;
  std::vector<std::string> e_budgets;
  double e_c = kDefaultDolevRonMultiplier;
  bool e_no_sim = false;
  exp->add_option("--algo", e_algo)->check(CLI::IsMember({"mconj", "conj", "dolev-ron"}));
  exp->add_option("--variant-pair", e_pair);
  exp->add_option("--n", e_n)->required();
  exp->add_option("--epsilon", e_eps);
  exp->add_option("--trials", e_trials);
  exp->add_option("--seed", e_seed);
  exp->add_option("--budget", e_budgets, "per-oracle budget; repeat for a sweep; 'inf' for none")->delimiter(',');
  exp->add_option("--amplify", e_amp)->check(CLI::PositiveNumber);
  exp->add_option("--out", e_out, "curve CSV (default stdout)");
  exp->add_option("--scaled", e_scaled, "h=..,r_blocks=..,m=..,s=..,bps=..");
  exp->add_option("--dr-c", e_c);
  exp->add_flag("--no-simulate", e_no_sim, "skip the p(z,R,Gamma) reference runs");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*test) return cmd_test(t_instance, t_algo, t_eps, t_seed, t_amp, t_log, t_trials, t_timing, t_c, t_out);
    if (*dist) return cmd_distance(d_instance, d_class, d_witness);
    if (*viol) return cmd_violation(v_instance, v_eps, v_emit, v_out);
    if (*gen) return cmd_gen(g_variant, g_n, g_scaled, g_seed, g_out, g_disjoint);
    if (*exp)
      return cmd_experiment(e_algo, e_pair, e_n, e_eps, e_trials, e_seed, e_budgets, e_amp, e_out, e_scaled, e_c,
                            !e_no_sim);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
