#pragma once

// Instance files:
//   { "n": int, "function": {...tagged spec...},
//     "distribution": [ {"zeros": [1-based indices], "weight": "num/den"}, ... ] }
//
// Function tags:
//   {"type":"mconj","S":[...]}
//   {"type":"conj","S":[...],"S_neg":[...]}
//   {"type":"dlist","rules":[{"index":i,"positive":bool,"output":bool},...],"default":bool}
//   {"type":"ltf","weights":[...],"threshold":int}
//   {"type":"truth_table","bits":"0110..."}        (character k = f at index k)
//   {"type":"flipped","C":[...],"inner":{...}}
//   {"type":"lower_bound","variant":"yes|no|yes-ltf|no-ltf","structure":{...}}
// The lower-bound structure object carries params, R, alpha, beta, blocks,
// a_blocks and b_blocks; the same object is what the sidecar file holds.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "subcube/distribution.hpp"
#include "subcube/function.hpp"

namespace subcube {

using Json = nlohmann::json;

struct Instance {
  FunctionSpec f;
  FiniteDistribution D;
};

inline Json params_to_json(const LBParams& p) {
  return Json{{"n", p.n},
              {"h", p.h},
              {"r_blocks", p.r_blocks},
              {"ell", p.ell},
              {"m", p.m},
              {"s", p.s},
              {"blocks_per_C", p.blocks_per_C},
              {"blocks_per_side", p.blocks_per_side},
              {"disjoint_pairs", p.disjoint_pairs}};
}

inline LBParams params_from_json(const Json& j) {
  LBParams p;
  p.n = j.at("n").get<std::size_t>();
  p.h = j.at("h").get<std::size_t>();
  p.r_blocks = j.at("r_blocks").get<std::size_t>();
  p.ell = j.at("ell").get<std::size_t>();
  p.m = j.at("m").get<std::size_t>();
  p.s = j.at("s").get<std::size_t>();
  p.blocks_per_C = j.at("blocks_per_C").get<std::size_t>();
  p.blocks_per_side = j.at("blocks_per_side").get<std::size_t>();
  p.disjoint_pairs = j.value("disjoint_pairs", false);
  return p;
}

inline Json structure_to_json(const LBInstance& inst) {
  return Json{{"variant", to_string(inst.variant)},
              {"params", params_to_json(inst.params)},
              {"R", inst.R},
              {"alpha", inst.alpha},
              {"beta", inst.beta},
              {"blocks", inst.blocks},
              {"a_blocks", inst.a_blocks},
              {"b_blocks", inst.b_blocks}};
}

inline LBInstance structure_from_json(const Json& j) {
  LBInstance inst;
  inst.variant = parse_variant(j.at("variant").get<std::string>());
  inst.params = params_from_json(j.at("params"));
  validate_params(inst.params, inst.variant);
  const std::size_t n = inst.params.n;
  inst.R = normalize_indices(j.at("R").get<std::vector<Index>>(), n);
  inst.alpha = j.at("alpha").get<std::vector<Index>>();
  inst.beta = j.at("beta").get<std::vector<Index>>();
  inst.blocks = j.at("blocks").get<std::vector<std::vector<Index>>>();
  for (auto& b : inst.blocks) b = normalize_indices(std::move(b), n);
  inst.a_blocks = j.at("a_blocks").get<std::vector<std::vector<std::size_t>>>();
  inst.b_blocks = j.at("b_blocks").get<std::vector<std::vector<std::size_t>>>();
  auto in_range = [&](Index x) { return x >= 1 && x <= n; };
  for (Index a : inst.alpha)
    if (!in_range(a)) throw Error("alpha index out of range");
  for (Index b : inst.beta)
    if (!in_range(b)) throw Error("beta index out of range");
  if (inst.a_blocks.size() != inst.params.m || inst.b_blocks.size() != inst.params.m)
    throw Error("need m block lists for A and B");
  for (const auto* lists : {&inst.a_blocks, &inst.b_blocks})
    for (const auto& l : *lists)
      for (std::size_t id : l)
        if (id >= inst.blocks.size()) throw Error("block id out of range");
  if (inst.alpha.size() != inst.params.m || inst.beta.size() != inst.params.m)
    throw Error("need m alphas and m betas");
  inst.derive();
  return inst;
}

inline Json function_to_json(const FunctionSpec& f) {
  return std::visit(
      [&](const auto& b) -> Json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, MonotoneConj>) {
          return Json{{"type", "mconj"}, {"S", b.S}};
        } else if constexpr (std::is_same_v<T, GeneralConj>) {
          return Json{{"type", "conj"}, {"S", b.S}, {"S_neg", b.S_neg}};
        } else if constexpr (std::is_same_v<T, DecisionList>) {
          Json rules = Json::array();
          for (const auto& r : b.rules)
            rules.push_back({{"index", r.literal.index}, {"positive", r.literal.positive}, {"output", r.output}});
          return Json{{"type", "dlist"}, {"rules", rules}, {"default", b.fallback}};
        } else if constexpr (std::is_same_v<T, LTFSpec>) {
          return Json{{"type", "ltf"}, {"weights", b.weights}, {"threshold", b.threshold}};
        } else if constexpr (std::is_same_v<T, TruthTable>) {
          std::string bits;
          bits.reserve(b.bits.size());
          for (bool v : b.bits) bits.push_back(v ? '1' : '0');
          return Json{{"type", "truth_table"}, {"bits", bits}};
        } else if constexpr (std::is_same_v<T, LowerBoundFn>) {
          return Json{{"type", "lower_bound"}, {"variant", to_string(b.variant)},
                      {"structure", structure_to_json(*b.instance)}};
        } else {
          return Json{{"type", "flipped"}, {"C", b.C}, {"inner", function_to_json(*b.inner)}};
        }
      },
      f.body());
}

inline FunctionSpec function_from_json(std::size_t n, const Json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "mconj") return FunctionSpec::monotone_conj(n, j.at("S").get<std::vector<Index>>());
  if (type == "conj")
    return FunctionSpec::general_conj(n, j.at("S").get<std::vector<Index>>(),
                                      j.value("S_neg", std::vector<Index>{}));
  if (type == "dlist") {
    std::vector<DecisionRule> rules;
    for (const auto& r : j.at("rules"))
      rules.push_back({{r.at("index").get<Index>(), r.at("positive").get<bool>()}, r.at("output").get<bool>()});
    return FunctionSpec::decision_list(n, std::move(rules), j.at("default").get<bool>());
  }
  if (type == "ltf")
    return FunctionSpec::ltf(n, j.at("weights").get<std::vector<std::int64_t>>(),
                             j.at("threshold").get<std::int64_t>());
  if (type == "truth_table") {
    const auto s = j.at("bits").get<std::string>();
    std::vector<bool> bits;
    bits.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1') throw Error("truth table bits must be 0/1");
      bits.push_back(c == '1');
    }
    return FunctionSpec::truth_table(n, std::move(bits));
  }
  if (type == "flipped")
    return FunctionSpec::flipped(function_from_json(n, j.at("inner")), j.at("C").get<std::vector<Index>>());
  if (type == "lower_bound") {
    auto inst = std::make_shared<const LBInstance>(structure_from_json(j.at("structure")));
    if (inst->n() != n) throw Error("lower-bound structure has a different n");
    const auto variant = parse_variant(j.value("variant", to_string(inst->variant)));
    return FunctionSpec::lower_bound(std::move(inst), variant);
  }
  throw Error("unknown function type: " + type);
}

inline Json instance_to_json(const FunctionSpec& f, const FiniteDistribution& D) {
  Json dist = Json::array();
  for (const auto& e : D.entries())
    dist.push_back({{"zeros", e.point.zeros()}, {"weight", format_rational(e.weight)}});
  return Json{{"n", D.n()}, {"function", function_to_json(f)}, {"distribution", dist}};
}

inline Instance instance_from_json(const Json& j) {
  const auto n = j.at("n").get<std::size_t>();
  if (n == 0) throw Error("dimension must be positive");
  FunctionSpec f = function_from_json(n, j.at("function"));
  std::vector<WeightedPoint> entries;
  for (const auto& e : j.at("distribution"))
    entries.push_back({ZeroSet(n, e.at("zeros").get<std::vector<Index>>()),
                       parse_rational(e.at("weight").get<std::string>())});
  return {std::move(f), FiniteDistribution(n, std::move(entries))};
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(what + ": " + e.what());
  }
}

inline Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return instance_from_json(parse_json_text(ss.str(), path));
  } catch (const Json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(1) << '\n';
}

inline void write_instance(const std::string& path, const FunctionSpec& f, const FiniteDistribution& D) {
  write_json_file(path, instance_to_json(f, D));
}

inline std::string sidecar_path(const std::string& path) { return path + ".structure.json"; }

}  // namespace subcube
