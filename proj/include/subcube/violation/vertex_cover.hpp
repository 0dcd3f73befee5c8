#pragma once

// Exact minimum-weight vertex cover of a bipartite graph via max-flow /
// min-cut (weighted Konig): source -> y with capacity wt(y), y -> j with
// capacity larger than every finite cut, j -> sink with capacity wt(j).
// A minimum cut never uses a middle edge, so the left vertices cut off from
// the source plus the right vertices still reachable form a minimum cover.

#include <algorithm>
#include <queue>
#include <vector>

#include "subcube/violation/bigraph.hpp"

namespace subcube {

inline constexpr std::size_t kMaxCoverVertices = 10000;

struct VertexCover {
  std::vector<std::size_t> left;   // positions in G.left
  std::vector<std::size_t> right;  // positions in G.right
  Rational weight;
};

namespace detail {

class RationalDinic {
 public:
  explicit RationalDinic(std::size_t nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  void add_edge(std::size_t u, std::size_t v, const Rational& cap) {
    adj_[u].push_back(edges_.size());
    edges_.push_back({v, cap});
    adj_[v].push_back(edges_.size());
    edges_.push_back({u, Rational(0)});
  }

  Rational max_flow(std::size_t s, std::size_t t) {
    Rational total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (true) {
        Rational pushed = dfs(s, t, nullptr);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Nodes reachable from s in the residual graph (valid after max_flow).
  std::vector<bool> reachable(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    Rational cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // limit == nullptr means unbounded.
  Rational dfs(std::size_t u, std::size_t t, const Rational* limit) {
    if (u == t) return limit ? *limit : Rational(0);
    for (std::size_t& i = it_[u]; i < adj_[u].size(); ++i) {
      const std::size_t id = adj_[u][i];
      Edge& e = edges_[id];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      const Rational bound = limit ? std::min(*limit, e.cap) : e.cap;
      Rational got = dfs(e.to, t, &bound);
      if (got > 0) {
        e.cap -= got;
        edges_[id ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace detail

inline VertexCover min_weight_vertex_cover(const ViolationGraph& G) {
  const std::size_t L = G.left.size(), R = G.right.size();
  if (L + R > kMaxCoverVertices) throw Error("vertex cover limited to 10^4 vertices");
  VertexCover out;
  out.weight = 0;
  if (G.edges.empty()) return out;
  Rational infinite = 1;
  for (const auto& v : G.left) infinite += v.wt;
  for (const auto& v : G.right) infinite += v.wt;
  const std::size_t s = L + R, t = L + R + 1;
  detail::RationalDinic flow(L + R + 2);
  for (std::size_t a = 0; a < L; ++a) flow.add_edge(s, a, G.left[a].wt);
  for (std::size_t b = 0; b < R; ++b) flow.add_edge(L + b, t, G.right[b].wt);
  for (const auto& [a, b] : G.edges) flow.add_edge(a, L + b, infinite);
  out.weight = flow.max_flow(s, t);
  const auto seen = flow.reachable(s);
  Rational check = 0;
  for (std::size_t a = 0; a < L; ++a)
    if (!seen[a]) {
      out.left.push_back(a);
      check += G.left[a].wt;
    }
  for (std::size_t b = 0; b < R; ++b)
    if (seen[L + b]) {
      out.right.push_back(b);
      check += G.right[b].wt;
    }
  if (check != out.weight) throw Error("internal error: cut weight differs from flow value");
  return out;
}

inline bool is_vertex_cover(const ViolationGraph& G, const VertexCover& C) {
  std::vector<bool> inL(G.left.size(), false), inR(G.right.size(), false);
  for (auto a : C.left) inL[a] = true;
  for (auto b : C.right) inR[b] = true;
  return std::all_of(G.edges.begin(), G.edges.end(),
                     [&](const auto& e) { return inL[e.first] || inR[e.second]; });
}

}  // namespace subcube
