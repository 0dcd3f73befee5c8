#pragma once

// Heavy-vertex pruning of the violation graph. With W = wt(G), a left vertex
// y is heavy when deg(y) >= d*W, and a right vertex j when
// in-wt(j) >= d*W*wt(j). The loop:
//   1. drop degree-zero vertices;
//   2. remove every heavy left vertex (into S), drop right vertices left
//      with degree zero;
//   3. exit if G has a vertex cover of weight <= eps/4;
//   4. remove every heavy right vertex (into S), drop left vertices left
//      with degree zero;
//   5. exit if G has a vertex cover of weight <= eps/4 or no heavy vertex
//      remains; otherwise repeat from 2.
// W is recomputed before every heaviness test.

#include <string>
#include <vector>

#include "subcube/violation/vertex_cover.hpp"

namespace subcube {

enum class PruneExit { cheap_cover_found, no_heavy_left };

inline std::string to_string(PruneExit e) {
  return e == PruneExit::cheap_cover_found ? "cheap-cover-found" : "no-heavy-left";
}

struct RemovedVertex {
  bool is_left = true;
  std::size_t position = 0;  // in the input graph
  Rational wt;
  std::size_t round = 0;
};

struct PruneReport {
  ViolationGraph G_star;
  std::vector<std::size_t> left_origin, right_origin;  // G_star position -> input position
  std::vector<RemovedVertex> removed_S;
  Rational W;                         // wt(G_star)
  std::vector<std::size_t> L_prime;   // positions in G_star.left with deg >= W/2
  std::size_t rounds = 0;
  PruneExit exit_reason = PruneExit::no_heavy_left;
  Rational exit_cover_weight;         // cover weight seen at the exit test
};

namespace detail {

class PruneState {
 public:
  explicit PruneState(const ViolationGraph& G)
      : G_(G), left_alive_(G.left.size(), true), right_alive_(G.right.size(), true) {}

  [[nodiscard]] ViolationGraph current(std::vector<std::size_t>* lo = nullptr,
                                       std::vector<std::size_t>* ro = nullptr) const {
    ViolationGraph H;
    H.n = G_.n;
    H.empty_strings = G_.empty_strings;
    std::vector<std::size_t> lmap(G_.left.size()), rmap(G_.right.size());
    for (std::size_t a = 0; a < G_.left.size(); ++a)
      if (left_alive_[a]) {
        lmap[a] = H.left.size();
        H.left.push_back(G_.left[a]);
        if (lo) lo->push_back(a);
      }
    for (std::size_t b = 0; b < G_.right.size(); ++b)
      if (right_alive_[b]) {
        rmap[b] = H.right.size();
        H.right.push_back(G_.right[b]);
        if (ro) ro->push_back(b);
      }
    for (const auto& [a, b] : G_.edges)
      if (left_alive_[a] && right_alive_[b]) H.edges.emplace_back(lmap[a], rmap[b]);
    return H;
  }

  void degrees(std::vector<std::size_t>& ldeg, std::vector<std::size_t>& rdeg,
               std::vector<Rational>& in_wt, Rational& W) const {
    ldeg.assign(G_.left.size(), 0);
    rdeg.assign(G_.right.size(), 0);
    in_wt.assign(G_.right.size(), Rational(0));
    W = 0;
    for (const auto& [a, b] : G_.edges) {
      if (!left_alive_[a] || !right_alive_[b]) continue;
      ++ldeg[a];
      ++rdeg[b];
      in_wt[b] += G_.left[a].wt;
      W += G_.left[a].wt;
    }
  }

  void drop_isolated(bool left_side, bool right_side) {
    std::vector<std::size_t> ldeg, rdeg;
    std::vector<Rational> in_wt;
    Rational W;
    degrees(ldeg, rdeg, in_wt, W);
    if (left_side)
      for (std::size_t a = 0; a < ldeg.size(); ++a)
        if (ldeg[a] == 0) left_alive_[a] = false;
    if (right_side)
      for (std::size_t b = 0; b < rdeg.size(); ++b)
        if (rdeg[b] == 0) right_alive_[b] = false;
  }

  std::vector<std::size_t> heavy_left(const Rational& d) const {
    std::vector<std::size_t> ldeg, rdeg;
    std::vector<Rational> in_wt;
    Rational W;
    degrees(ldeg, rdeg, in_wt, W);
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < ldeg.size(); ++a)
      if (left_alive_[a] && Rational(static_cast<unsigned long>(ldeg[a])) >= d * W) out.push_back(a);
    return out;
  }

  std::vector<std::size_t> heavy_right(const Rational& d) const {
    std::vector<std::size_t> ldeg, rdeg;
    std::vector<Rational> in_wt;
    Rational W;
    degrees(ldeg, rdeg, in_wt, W);
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < rdeg.size(); ++b)
      if (right_alive_[b] && in_wt[b] >= d * W * G_.right[b].wt) out.push_back(b);
    return out;
  }

  void remove_left(std::size_t a) { left_alive_[a] = false; }
  void remove_right(std::size_t b) { right_alive_[b] = false; }

 private:
  const ViolationGraph& G_;
  std::vector<bool> left_alive_, right_alive_;
};

}  // namespace detail

// True iff no vertex of G is heavy for the given d.
inline bool has_no_heavy_vertex(const ViolationGraph& G, std::uint64_t d) {
  const Rational dd(from_u64(d));
  const Rational W = G.weight();
  const auto ldeg = G.left_degrees();
  std::vector<Rational> in_wt(G.right.size(), Rational(0));
  for (const auto& [a, b] : G.edges) in_wt[b] += G.left[a].wt;
  for (std::size_t a = 0; a < G.left.size(); ++a)
    if (Rational(static_cast<unsigned long>(ldeg[a])) >= dd * W) return false;
  for (std::size_t b = 0; b < G.right.size(); ++b)
    if (in_wt[b] >= dd * W * G.right[b].wt) return false;
  return true;
}

inline PruneReport prune_to_regular(const ViolationGraph& G, const Rational& epsilon, std::uint64_t d) {
  if (d < 1) throw Error("pruning needs d >= 1");
  if (epsilon <= 0 || epsilon > 1) throw Error("epsilon must lie in (0, 1]");
  const Rational dd(from_u64(d));
  const Rational cheap = epsilon / 4;
  detail::PruneState state(G);
  PruneReport report;

  auto cover_weight = [&] { return min_weight_vertex_cover(state.current()).weight; };
  auto finish = [&](PruneExit why, const Rational& cover) {
    report.exit_reason = why;
    report.exit_cover_weight = cover;
    report.G_star = state.current(&report.left_origin, &report.right_origin);
    report.W = report.G_star.weight();
    const auto deg = report.G_star.left_degrees();
    for (std::size_t a = 0; a < deg.size(); ++a)
      if (Rational(static_cast<unsigned long>(deg[a])) >= report.W / 2) report.L_prime.push_back(a);
    return report;
  };

  state.drop_isolated(true, true);  // step 1
  while (true) {
    ++report.rounds;
    for (std::size_t a : state.heavy_left(dd)) {  // step 2
      report.removed_S.push_back({true, a, G.left[a].wt, report.rounds});
      state.remove_left(a);
    }
    state.drop_isolated(false, true);
    if (Rational c = cover_weight(); c <= cheap) return finish(PruneExit::cheap_cover_found, c);  // step 3
    for (std::size_t b : state.heavy_right(dd)) {  // step 4
      report.removed_S.push_back({false, b, G.right[b].wt, report.rounds});
      state.remove_right(b);
    }
    state.drop_isolated(true, false);
    const Rational c = cover_weight();  // step 5
    if (c <= cheap) return finish(PruneExit::cheap_cover_found, c);
    if (state.heavy_left(dd).empty() && state.heavy_right(dd).empty())
      return finish(PruneExit::no_heavy_left, c);
  }
}

struct RegularityDiagnostics {
  Rational W;
  Rational wt_L_prime;
  Rational min_cover;
  bool W_at_least_eps_over_8 = false;
  bool L_prime_at_least_1_over_2d = false;
  bool cover_at_least_3eps_over_8 = false;
};

// Informational only. Accepts no-heavy-left exits, and cheap-cover exits
// whose G* has no edges (then W = 0 and L' is empty).
inline RegularityDiagnostics regularity_diagnostics(const PruneReport& report, const Rational& epsilon,
                                                    std::uint64_t d) {
  if (report.exit_reason != PruneExit::no_heavy_left && !report.G_star.edges.empty())
    throw Error("diagnostics need a no-heavy-left exit");
  RegularityDiagnostics diag;
  diag.W = report.W;
  diag.wt_L_prime = 0;
  for (std::size_t a : report.L_prime) diag.wt_L_prime += report.G_star.left[a].wt;
  diag.min_cover = min_weight_vertex_cover(report.G_star).weight;
  diag.W_at_least_eps_over_8 = diag.W >= epsilon / 8;
  diag.L_prime_at_least_1_over_2d = diag.wt_L_prime >= Rational(BigInt(1), from_u64(2 * d));
  diag.cover_at_least_3eps_over_8 = diag.min_cover >= 3 * epsilon / 8;
  return diag;
}

}  // namespace subcube
