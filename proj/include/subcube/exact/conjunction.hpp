#pragma once

// Exact distances to monotone and general conjunctions on a finite sample.
//
// Only coordinates that are 0 somewhere in the support can change a label,
// and two coordinates that are 0 on exactly the same support points act
// identically, so the search runs over distinct "patterns" (the set of
// support points that are 0 at a coordinate) instead of coordinates.

#include <functional>
#include <map>
#include <vector>

#include "subcube/exact/labeled_sample.hpp"

namespace subcube {

inline constexpr std::size_t kMaxMconjPatterns = 24;
inline constexpr std::size_t kMaxConjPatterns = 14;
inline constexpr std::size_t kMaxSamplePoints = 64;

struct ConjunctionFit {
  Rational distance;
  std::vector<Index> S;      // positive literals
  std::vector<Index> S_neg;  // negated literals (general conjunctions)
  bool all_zero = false;     // best fit is the constant 0
};

namespace detail {

struct PatternTable {
  std::vector<std::uint64_t> masks;           // distinct nonzero patterns
  std::vector<std::vector<Index>> coords;     // coordinates per pattern
  std::uint64_t full = 0;                     // mask of all support points
};

inline PatternTable patterns(const LabeledSample& s) {
  if (s.size() > kMaxSamplePoints) throw Error("sample limited to 64 points");
  std::map<Index, std::uint64_t> by_coord;
  for (std::size_t k = 0; k < s.size(); ++k)
    for (Index i : s[k].point.zeros()) by_coord[i] |= std::uint64_t{1} << k;
  std::map<std::uint64_t, std::vector<Index>> grouped;
  for (const auto& [i, m] : by_coord) grouped[m].push_back(i);
  PatternTable t;
  t.full = s.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.size()) - 1;
  for (auto& [m, c] : grouped) {
    t.masks.push_back(m);
    t.coords.push_back(std::move(c));
  }
  return t;
}

// err(M) for M = set of points the candidate labels 0, as err0 + sum of
// delta[k] over k in M.
template <typename Num>
struct ErrorModel {
  Num err0{};
  std::vector<Num> delta;

  Num add(Num err, std::uint64_t newly) const {
    while (newly) {
      const int k = __builtin_ctzll(newly);
      err += delta[static_cast<std::size_t>(k)];
      newly &= newly - 1;
    }
    return err;
  }
};

template <typename Num>
ErrorModel<Num> error_model(const LabeledSample& s, const std::vector<Num>& w) {
  ErrorModel<Num> m;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!s[k].label) m.err0 += w[k];
    m.delta.push_back(s[k].label ? w[k] : Num(0) - w[k]);
  }
  return m;
}

template <typename Num>
struct MconjSearch {
  const PatternTable& table;
  const ErrorModel<Num>& model;
  Num best;
  std::uint64_t chosen = 0, best_chosen = 0;

  void run(std::size_t idx, std::uint64_t M, const Num& err) {
    if (idx == table.masks.size()) {
      if (err < best) {
        best = err;
        best_chosen = chosen;
      }
      return;
    }
    run(idx + 1, M, err);
    const std::uint64_t newly = table.masks[idx] & ~M;
    if (newly == 0) return;  // same function as skipping
    chosen |= std::uint64_t{1} << idx;
    run(idx + 1, M | newly, model.add(err, newly));
    chosen &= ~(std::uint64_t{1} << idx);
  }
};

template <typename Num>
ConjunctionFit mconj_fit(const LabeledSample& s, const std::vector<Num>& w,
                         const std::function<Rational(const Num&)>& to_rational) {
  const auto table = patterns(s);
  if (table.masks.size() > kMaxMconjPatterns) throw Error("too many relevant coordinate patterns for MCONJ search");
  const auto model = error_model(s, w);
  MconjSearch<Num> search{table, model, model.err0};
  search.run(0, 0, model.err0);
  ConjunctionFit fit;
  fit.distance = to_rational(search.best);
  for (std::size_t p = 0; p < table.masks.size(); ++p)
    if (search.best_chosen >> p & 1) fit.S.insert(fit.S.end(), table.coords[p].begin(), table.coords[p].end());
  std::sort(fit.S.begin(), fit.S.end());
  return fit;
}

template <typename Num>
ConjunctionFit conj_fit(const LabeledSample& s, const std::vector<Num>& w,
                        const std::function<Rational(const Num&)>& to_rational) {
  auto table = patterns(s);
  // Patterns covering every point act like nothing (in S') or like the
  // constant 0 (in S); the constant 0 is tried separately.
  std::vector<std::size_t> keep;
  for (std::size_t p = 0; p < table.masks.size(); ++p)
    if (table.masks[p] != table.full) keep.push_back(p);
  if (keep.size() > kMaxConjPatterns) throw Error("too many relevant coordinate patterns for CONJ search");
  const auto model = error_model(s, w);
  // all-0 candidate
  Num best = model.add(model.err0, table.full);
  std::vector<int> choice(keep.size(), 0), best_choice;
  bool best_all_zero = true;
  // choice 0: unused, 1: in S (kills pattern), 2: in S' (kills complement)
  std::function<void(std::size_t, std::uint64_t, Num)> rec = [&](std::size_t idx, std::uint64_t M, Num err) {
    if (idx == keep.size()) {
      if (err < best) {
        best = err;
        best_choice = choice;
        best_all_zero = false;
      }
      return;
    }
    const std::uint64_t P = table.masks[keep[idx]];
    choice[idx] = 0;
    rec(idx + 1, M, err);
    if (const std::uint64_t newly = P & ~M; newly) {
      choice[idx] = 1;
      rec(idx + 1, M | newly, model.add(err, newly));
    }
    if (const std::uint64_t newly = (table.full & ~P) & ~M; newly) {
      choice[idx] = 2;
      rec(idx + 1, M | newly, model.add(err, newly));
    }
    choice[idx] = 0;
  };
  rec(0, 0, model.err0);
  ConjunctionFit fit;
  fit.distance = to_rational(best);
  fit.all_zero = best_all_zero;
  if (best_all_zero) {
    // x_1 AND NOT x_1
    fit.S = {1};
    fit.S_neg = {1};
    return fit;
  }
  for (std::size_t q = 0; q < keep.size(); ++q) {
    // One representative coordinate suffices for S'; S takes them all.
    const auto& coords = table.coords[keep[q]];
    if (best_choice[q] == 1) fit.S.insert(fit.S.end(), coords.begin(), coords.end());
    if (best_choice[q] == 2) fit.S_neg.push_back(coords.front());
  }
  std::sort(fit.S.begin(), fit.S.end());
  std::sort(fit.S_neg.begin(), fit.S_neg.end());
  return fit;
}

template <typename F>
ConjunctionFit dispatch_exact(const LabeledSample& s, F&& fit) {
  if (s.size() == 0) return ConjunctionFit{Rational(0), {}, {}, false};
  const auto scaled = scale_weights(s);
  if (scaled.fits) {
    std::vector<std::int64_t> w(scaled.num.begin(), scaled.num.end());
    const BigInt denom = scaled.denom;
    return fit(w, std::function<Rational(const std::int64_t&)>([denom](const std::int64_t& v) {
                 Rational q(BigInt(static_cast<long>(v)), denom);
                 q.canonicalize();
                 return q;
               }));
  }
  std::vector<Rational> w;
  for (const auto& p : s.points()) w.push_back(p.weight);
  return fit(w, std::function<Rational(const Rational&)>([](const Rational& v) { return v; }));
}

}  // namespace detail

inline ConjunctionFit fit_monotone_conjunction(const LabeledSample& s) {
  return detail::dispatch_exact(s, [&](const auto& w, const auto& conv) { return detail::mconj_fit(s, w, conv); });
}

inline ConjunctionFit fit_general_conjunction(const LabeledSample& s) {
  return detail::dispatch_exact(s, [&](const auto& w, const auto& conv) { return detail::conj_fit(s, w, conv); });
}

inline Rational exact_distance_mconj(const LabeledSample& s) { return fit_monotone_conjunction(s).distance; }
inline Rational exact_distance_conj(const LabeledSample& s) { return fit_general_conjunction(s).distance; }

inline Rational exact_distance_mconj(const FunctionSpec& f, const FiniteDistribution& D) {
  return exact_distance_mconj(LabeledSample::from(f, D));
}
inline Rational exact_distance_conj(const FunctionSpec& f, const FiniteDistribution& D) {
  return exact_distance_conj(LabeledSample::from(f, D));
}

}  // namespace subcube
