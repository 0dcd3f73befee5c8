#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "subcube/adversarial/instance.hpp"
#include "subcube/rational.hpp"
#include "subcube/zero_set.hpp"

namespace subcube {

class FunctionSpec;

// AND of z_i over S; the empty conjunction is the all-1 function.
struct MonotoneConj {
  std::vector<Index> S;
  std::vector<bool> member;  // member[i] iff i in S, sized n + 1
};

// AND of z_i over S and of NOT z_i over S_neg. Overlap gives the all-0 function.
struct GeneralConj {
  std::vector<Index> S, S_neg;
};

struct Literal {
  Index index = 0;
  bool positive = true;  // z_i when true, NOT z_i when false
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct DecisionRule {
  Literal literal;
  bool output = false;
  friend bool operator==(const DecisionRule&, const DecisionRule&) = default;
};

struct DecisionList {
  std::vector<DecisionRule> rules;
  bool fallback = false;
};

// 1 iff sum_i w_i z_i >= threshold.
struct LTFSpec {
  std::vector<std::int64_t> weights;  // weights[i-1] for coordinate i
  std::int64_t threshold = 0;
};

// bits[k] is f at the string whose binary expansion is k, with z_1 the least
// significant bit. The all-ones string is index 2^n - 1.
struct TruthTable {
  std::vector<bool> bits;
};

struct LowerBoundFn {
  std::shared_ptr<const LBInstance> instance;
  LBVariant variant = LBVariant::yes;
};

// f evaluated at x^(C).
struct Flipped {
  std::shared_ptr<const FunctionSpec> inner;
  std::vector<Index> C;
};

inline constexpr std::size_t kMaxTruthTableDim = 24;

// Tagged description of a Boolean function over {0,1}^n. Immutable.
class FunctionSpec {
 public:
  using Body = std::variant<MonotoneConj, GeneralConj, DecisionList, LTFSpec, TruthTable,
                            LowerBoundFn, Flipped>;

  static FunctionSpec monotone_conj(std::size_t n, std::vector<Index> S) {
    MonotoneConj body{normalize_indices(std::move(S), check_dim(n)), std::vector<bool>(n + 1, false)};
    for (Index i : body.S) body.member[i] = true;
    return FunctionSpec(n, std::move(body));
  }

  static FunctionSpec general_conj(std::size_t n, std::vector<Index> S, std::vector<Index> S_neg) {
    check_dim(n);
    return FunctionSpec(n, GeneralConj{normalize_indices(std::move(S), n),
                                       normalize_indices(std::move(S_neg), n)});
  }

  static FunctionSpec decision_list(std::size_t n, std::vector<DecisionRule> rules, bool fallback) {
    check_dim(n);
    for (const auto& r : rules)
      if (r.literal.index < 1 || r.literal.index > n)
        throw Error("decision-list literal index out of range");
    return FunctionSpec(n, DecisionList{std::move(rules), fallback});
  }

  static FunctionSpec ltf(std::size_t n, std::vector<std::int64_t> weights, std::int64_t threshold) {
    check_dim(n);
    if (weights.size() != n) throw Error("LTF needs one weight per coordinate");
    return FunctionSpec(n, LTFSpec{std::move(weights), threshold});
  }

  static FunctionSpec truth_table(std::size_t n, std::vector<bool> bits) {
    check_dim(n);
    if (n > kMaxTruthTableDim) throw Error("truth tables are limited to n <= 24");
    if (bits.size() != (std::size_t{1} << n)) throw Error("truth table needs 2^n entries");
    return FunctionSpec(n, TruthTable{std::move(bits)});
  }

  static FunctionSpec lower_bound(std::shared_ptr<const LBInstance> inst, LBVariant variant) {
    if (!inst) throw Error("null lower-bound instance");
    const std::size_t n = inst->n();
    return FunctionSpec(n, LowerBoundFn{std::move(inst), variant});
  }

  static FunctionSpec flipped(FunctionSpec inner, std::vector<Index> C) {
    const std::size_t n = inner.n();
    auto c = normalize_indices(std::move(C), n);
    return FunctionSpec(n, Flipped{std::make_shared<const FunctionSpec>(std::move(inner)), std::move(c)});
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const Body& body() const { return body_; }

  template <typename T>
  [[nodiscard]] const T* as() const {
    return std::get_if<T>(&body_);
  }

  // f(z) for the z with ZERO(z) = x. Pure.
  [[nodiscard]] bool eval(const ZeroSet& x) const {
    if (x.n() != n_) throw Error("dimension mismatch: function n=" + std::to_string(n_) +
                                 ", point n=" + std::to_string(x.n()));
    return std::visit([&](const auto& b) { return eval_body(b, x); }, body_);
  }

  [[nodiscard]] bool operator()(const ZeroSet& x) const { return eval(x); }

 private:
  FunctionSpec(std::size_t n, Body body) : n_(n), body_(std::move(body)) {}

  static std::size_t check_dim(std::size_t n) {
    if (n == 0) throw Error("dimension must be positive");
    return n;
  }

  static bool eval_body(const MonotoneConj& f, const ZeroSet& x) {
    for (Index i : x.zeros())
      if (f.member[i]) return false;
    return true;
  }
  static bool eval_body(const GeneralConj& f, const ZeroSet& x) {
    if (intersects(f.S, x.zeros())) return false;
    return std::includes(x.zeros().begin(), x.zeros().end(), f.S_neg.begin(), f.S_neg.end());
  }
  static bool eval_body(const DecisionList& f, const ZeroSet& x) {
    for (const auto& rule : f.rules)
      if (x.bit(rule.literal.index) == rule.literal.positive) return rule.output;
    return f.fallback;
  }
  static bool eval_body(const LTFSpec& f, const ZeroSet& x) {
    __int128 sum = 0;
    for (auto w : f.weights) sum += w;
    for (Index i : x.zeros()) sum -= f.weights[i - 1];
    return sum >= f.threshold;
  }
  static bool eval_body(const TruthTable& f, const ZeroSet& x) {
    std::uint64_t index = (f.bits.size() - 1);
    for (Index i : x.zeros()) index &= ~(std::uint64_t{1} << (i - 1));
    return f.bits[index];
  }
  static bool eval_body(const LowerBoundFn& f, const ZeroSet& x) {
    return eval_lower_bound(*f.instance, f.variant, x);
  }
  static bool eval_body(const Flipped& f, const ZeroSet& x) { return f.inner->eval(x.flipped(f.C)); }

  std::size_t n_;
  Body body_;
};

// Truth table of any function, n <= 24.
inline FunctionSpec tabulate(const FunctionSpec& f) {
  const std::size_t n = f.n();
  if (n > kMaxTruthTableDim) throw Error("cannot tabulate n > 24");
  std::vector<bool> bits(std::size_t{1} << n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t k = 0; k <= full; ++k) bits[k] = f.eval(ZeroSet::from_mask(n, full & ~k));
  return FunctionSpec::truth_table(n, std::move(bits));
}

}  // namespace subcube
