#pragma once

// Linear separability with exact rational simplex. A sample is LTF-consistent
// iff some w, theta give w.z >= theta on 1-points and w.z < theta on
// 0-points. With a margin delta this is the LP
//   max delta  s.t.  theta - w.z <= 0          (label 1)
//                    w.z - theta + delta <= 0  (label 0)
//                    delta <= 1,
// over free w, theta (split into nonnegative parts) and delta >= 0; the
// sample is consistent iff the optimum is positive. All right-hand sides are
// nonnegative, so the slack basis is feasible and no phase one is needed.
// Coordinates constant on the sample fold into theta, and coordinates with
// identical columns merge into one variable.

#include <map>
#include <optional>
#include <vector>

#include "subcube/exact/dlist.hpp"
#include "subcube/exact/labeled_sample.hpp"

namespace subcube {

inline constexpr std::size_t kMaxLtfPoints = 64;
inline constexpr std::size_t kMaxLtfDim = 64;

namespace detail {

// Dense tableau simplex for max c.x s.t. A x <= b, x >= 0, b >= 0, using
// Bland's rule (no cycling). Returns nullopt when unbounded.
class RationalSimplex {
 public:
  RationalSimplex(std::vector<std::vector<Rational>> A, std::vector<Rational> b, std::vector<Rational> c)
      : m_(A.size()), n_(c.size()) {
    T_.assign(m_ + 1, std::vector<Rational>(n_ + m_ + 1, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      if (b[i] < 0) throw Error("simplex needs b >= 0");
      for (std::size_t j = 0; j < n_; ++j) T_[i][j] = A[i][j];
      T_[i][n_ + i] = 1;
      T_[i][n_ + m_] = b[i];
      basis_.push_back(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) T_[m_][j] = -c[j];  // objective row: z - c.x = 0
  }

  std::optional<Rational> maximize() {
    const std::size_t cols = n_ + m_;
    while (true) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (T_[m_][j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols) return T_[m_][cols];
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (T_[i][enter] <= 0) continue;
        Rational ratio = T_[i][cols] / T_[i][enter];
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return std::nullopt;
      pivot(leave, enter);
    }
  }

  [[nodiscard]] std::vector<Rational> solution() const {
    std::vector<Rational> x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = T_[i][n_ + m_];
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational p = T_[r][c];
    for (auto& v : T_[r]) v /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || T_[i][c] == 0) continue;
      const Rational factor = T_[i][c];
      for (std::size_t j = 0; j < T_[i].size(); ++j)
        if (T_[r][j] != 0) T_[i][j] -= factor * T_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t m_, n_;
  std::vector<std::vector<Rational>> T_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

struct LtfSeparator {
  std::vector<Rational> weights;  // per coordinate 1..n (index i-1)
  Rational threshold;
};

// A separating (w, theta) with margin, or nullopt when the sample is not
// linearly separable.
inline std::optional<LtfSeparator> find_ltf_separator(const LabeledSample& s) {
  if (s.size() > kMaxLtfPoints) throw Error("LTF check limited to 64 points");
  if (s.n() > kMaxLtfDim) throw Error("LTF check limited to n <= 64");
  const std::size_t k = s.size();
  const std::size_t n = s.n();
  LtfSeparator sep;
  sep.weights.assign(n, Rational(0));
  if (k == 0) return sep;
  // Column of coordinate i: bit p set iff z_i = 1 at point p.
  const std::uint64_t full = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  std::map<std::uint64_t, std::vector<Index>> columns;
  for (Index i = 1; i <= n; ++i) {
    std::uint64_t col = 0;
    for (std::size_t p = 0; p < k; ++p)
      if (s[p].point.bit(i)) col |= std::uint64_t{1} << p;
    if (col != 0 && col != full) columns[col].push_back(i);
  }
  std::vector<std::uint64_t> cols;
  for (const auto& [c, idx] : columns) cols.push_back(c);
  const std::size_t v = cols.size();
  // variables: w+ (v), w- (v), theta+, theta-, delta
  const std::size_t nv = 2 * v + 3;
  const std::size_t tp = 2 * v, tm = 2 * v + 1, dl = 2 * v + 2;
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (std::size_t p = 0; p < k; ++p) {
    std::vector<Rational> row(nv, Rational(0));
    const int sign = s[p].label ? -1 : 1;  // label 1: theta - w.z <= 0
    for (std::size_t q = 0; q < v; ++q)
      if (cols[q] >> p & 1) {
        row[q] = sign;
        row[v + q] = -sign;
      }
    row[tp] = -sign;
    row[tm] = sign;
    if (!s[p].label) row[dl] = 1;
    A.push_back(std::move(row));
    b.emplace_back(0);
  }
  std::vector<Rational> cap(nv, Rational(0));
  cap[dl] = 1;
  A.push_back(std::move(cap));
  b.emplace_back(1);
  std::vector<Rational> c(nv, Rational(0));
  c[dl] = 1;
  detail::RationalSimplex lp(std::move(A), std::move(b), std::move(c));
  const auto opt = lp.maximize();
  if (!opt) throw Error("internal error: margin LP unbounded");
  if (*opt <= 0) return std::nullopt;
  const auto x = lp.solution();
  for (std::size_t q = 0; q < v; ++q) {
    const Rational w = x[q] - x[v + q];
    // Put the merged column's weight on its first coordinate.
    sep.weights[columns[cols[q]].front() - 1] = w;
  }
  // Coordinates equal to 1 on every point add nothing; folding into theta
  // is unnecessary since they carry weight 0.
  sep.threshold = x[tp] - x[tm];
  return sep;
}

inline bool ltf_consistent(const LabeledSample& s) { return find_ltf_separator(s).has_value(); }

inline FlipFit fit_ltf(const LabeledSample& s) {
  return min_weight_flip(s, [](const LabeledSample& t) { return ltf_consistent(t); });
}

inline Rational exact_distance_ltf(const LabeledSample& s) { return fit_ltf(s).distance; }

}  // namespace subcube
