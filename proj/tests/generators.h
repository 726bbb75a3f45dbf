// Seeded random inputs for property tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "cohere/entailment.h"
#include "cohere/proposition.h"
#include "cohere/world.h"

namespace gen {

struct Rng {
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine() % n); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(engine) < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  std::mt19937_64 engine;
};

struct Vocab {
  std::vector<std::pair<std::string, std::size_t>> predicates{{"p", 1}, {"q", 2}, {"r", 1}, {"s", 2}};
  std::vector<std::string> constants{"a", "b", "c"};
  std::vector<std::string> variables{"X", "Y", "Z"};
};

inline cohere::Proposition fact(Rng& rng, const Vocab& v = {}, double negate = 0.2,
                                double ordinal = 0.2) {
  const auto& [pred, arity] = rng.pick(v.predicates);
  std::vector<std::string> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(rng.pick(v.constants));
  std::optional<std::uint64_t> ord;
  if (rng.chance(ordinal)) ord = rng.below(4);
  return cohere::Proposition::fact(pred, args, ord, !rng.chance(negate));
}

inline cohere::PropositionSet facts(Rng& rng, std::size_t n, const Vocab& v = {}) {
  std::vector<cohere::Proposition> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(fact(rng, v));
  return cohere::PropositionSet::unordered(std::move(out));
}

inline std::string pattern(Rng& rng, const Vocab& v, const std::vector<std::string>& vars,
                           const std::string& ordinal_var = {}) {
  const auto& [pred, arity] = rng.pick(v.predicates);
  std::string s;
  if (!ordinal_var.empty()) s += "@" + ordinal_var + ":";
  if (rng.chance(0.2)) s += "!";
  s += pred + "(";
  for (std::size_t i = 0; i < arity; ++i) {
    if (i) s += ",";
    s += rng.chance(0.25) ? rng.pick(v.constants) : rng.pick(vars);
  }
  return s + ")";
}

/// Rule text in the DSL. Conclusions only reuse variables of the premises,
/// which holds trivially by drawing them from a premise's own argument list.
inline std::string rule_text(Rng& rng, bool entail, const Vocab& v = {}) {
  if (!entail) {
    // Both sides over one shared variable pool keeps the mirror well-formed.
    std::vector<std::string> vars{rng.pick(v.variables), rng.pick(v.variables)};
    return pattern(rng, v, vars) + " >< " + pattern(rng, v, vars);
  }
  const bool ordered = rng.chance(0.25);
  std::string lhs = ordered ? pattern(rng, v, {"X", "Y"}, "T") + " & " + pattern(rng, v, {"X", "Y"}, "U")
                            : pattern(rng, v, {"X", "Y"});
  if (!ordered && rng.chance(0.3)) lhs += " & " + pattern(rng, v, {"X", "Y"});
  // Bound variables are those appearing in lhs.
  std::vector<std::string> bound;
  for (const char* var : {"X", "Y"}) {
    if (lhs.find(var) != std::string::npos) bound.emplace_back(var);
  }
  std::string rhs;
  if (bound.empty()) {
    const auto& [pred, arity] = rng.pick(v.predicates);
    rhs = pred + "(";
    for (std::size_t i = 0; i < arity; ++i) rhs += (i ? "," : "") + rng.pick(v.constants);
    rhs += ")";
  } else {
    rhs = pattern(rng, v, bound);
  }
  std::string s = lhs + " -> " + rhs;
  if (ordered) s += rng.chance(0.5) ? " | T < U" : " | T <= U";
  return s;
}

inline cohere::KnowledgeBase kb(Rng& rng, std::size_t rules, bool entail = true,
                                bool contradict = true, std::size_t depth = 1) {
  std::string text;
  for (std::size_t i = 0; i < rules; ++i) {
    bool e = entail && (!contradict || rng.chance(0.6));
    text += rule_text(rng, e) + "\n";
  }
  return cohere::parse_kb(text, "<random>", depth);
}

/// Random scene over `names` with a few edges and states.
inline cohere::SceneGraph graph(Rng& rng, const std::vector<std::string>& names,
                                std::size_t edges) {
  cohere::SceneGraph g;
  for (const auto& n : names) {
    std::set<cohere::StateAttribute> st;
    if (rng.chance(0.3)) st.emplace("has_state", rng.chance(0.5) ? "on" : "off");
    g.add_node(n, st);
  }
  static const std::vector<std::string> rels{"on_top", "inside", "next_to"};
  for (std::size_t i = 0; i < edges; ++i) {
    cohere::SpatialEdge e{rng.pick(rels), rng.pick(names), rng.pick(names)};
    if (e.src != e.dst && !g.has_edge(e)) g.add_edge(e.relation, e.src, e.dst);
  }
  return g;
}

inline cohere::Plan plan(Rng& rng, const std::vector<std::string>& names, std::size_t steps) {
  cohere::Plan p;
  p.task = "random_task";
  static const std::vector<std::string> acts{"pick_up", "put_down", "turn_on", "open"};
  for (std::size_t i = 0; i < steps; ++i) {
    cohere::Action a;
    a.name = rng.pick(acts);
    std::size_t n = 1 + rng.below(2);
    for (std::size_t k = 0; k < n; ++k) a.args.push_back(rng.pick(names));
    p.steps.push_back(std::move(a));
  }
  return p;
}

}  // namespace gen
