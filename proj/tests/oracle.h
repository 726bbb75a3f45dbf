// Brute-force reference evaluators used by the property and acceptance tests.
// They share only data types with the library: matching, substitution,
// closure and the label definitions are re-derived here from scratch.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cohere/entailment.h"
#include "cohere/world.h"

namespace oracle {

using cohere::Label;
using cohere::Proposition;
using cohere::Term;

using Env = std::map<std::string, Term>;

inline bool match_term(const Term& pat, const Term& val, Env& env) {
  if (!pat.is_variable()) return pat == val;
  auto [it, fresh] = env.emplace(pat.text(), val);
  return fresh || it->second == val;
}

inline bool match(const Proposition& pat, const Proposition& fact, Env& env) {
  if (pat.polarity != fact.polarity || pat.predicate != fact.predicate ||
      pat.args.size() != fact.args.size() || pat.ordinal.has_value() != fact.ordinal.has_value()) {
    return false;
  }
  Env trial = env;
  if (pat.ordinal && !match_term(*pat.ordinal, *fact.ordinal, trial)) return false;
  for (std::size_t i = 0; i < pat.args.size(); ++i) {
    if (!match_term(pat.args[i], fact.args[i], trial)) return false;
  }
  env = std::move(trial);
  return true;
}

inline Term resolve(const Term& t, const Env& env) {
  return t.is_variable() ? env.at(t.text()) : t;
}

inline Proposition instantiate(const Proposition& pat, const Env& env) {
  Proposition out = pat;
  for (auto& a : out.args) a = resolve(a, env);
  if (out.ordinal) out.ordinal = resolve(*out.ordinal, env);
  return out;
}

inline bool guard_ok(const cohere::Guard& g, const Env& env) {
  auto l = env.find(g.lhs), r = env.find(g.rhs);
  if (l == env.end() || r == env.end()) return false;
  if (l->second.kind() != Term::Kind::Int || r->second.kind() != Term::Kind::Int) return false;
  auto a = std::stoull(l->second.text()), b = std::stoull(r->second.text());
  switch (g.op) {
    case cohere::GuardOp::Less: return a < b;
    case cohere::GuardOp::LessEqual: return a <= b;
    case cohere::GuardOp::Equal: return a == b;
  }
  return false;
}

inline bool guards_ok(const cohere::Rule& r, const Env& env) {
  return std::all_of(r.guards.begin(), r.guards.end(),
                     [&](const cohere::Guard& g) { return guard_ok(g, env); });
}

/// Every conclusion of `rule` over all |facts|^k premise tuples.
inline std::vector<Proposition> fire(const cohere::Rule& rule,
                                     const std::vector<Proposition>& facts) {
  std::vector<Proposition> out;
  const std::size_t k = rule.premises.size();
  if (facts.empty()) return out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    Env env;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = match(rule.premises[i], facts[idx[i]], env);
    if (ok && guards_ok(rule, env)) out.push_back(instantiate(rule.conclusion, env));
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == facts.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

inline std::set<Proposition> closure(const cohere::PropositionSet& premises,
                                     const cohere::KnowledgeBase& kb, std::size_t depth) {
  std::set<Proposition> d(premises.begin(), premises.end());
  for (std::size_t round = 0; round < depth; ++round) {
    std::vector<Proposition> facts(d.begin(), d.end());
    std::set<Proposition> fresh;
    for (const auto& r : kb.rules) {
      if (r.kind != cohere::RuleKind::Entails) continue;
      for (auto& c : fire(r, facts)) {
        if (!d.count(c)) fresh.insert(std::move(c));
      }
    }
    if (fresh.empty()) break;
    d.insert(fresh.begin(), fresh.end());
  }
  return d;
}

/// The ternary definitions read literally (with "neither" for NotEntails):
/// Contradicts if some derived premise clashes in polarity with, or matches a
/// contradiction rule against, some hypothesis member; otherwise Entails if
/// some hypothesis member is derived, either as an identical premise or as the
/// conclusion of a rule over the previous round; otherwise NotEntails.
inline Label classify(const cohere::PropositionSet& premises,
                      const cohere::PropositionSet& hypothesis, const cohere::KnowledgeBase& kb) {
  const std::size_t depth = kb.max_depth;
  const auto d = closure(premises, kb, depth);
  for (const auto& p : d) {
    for (const auto& q : hypothesis) {
      if (p.negated() == q) return Label::Contradicts;
      for (const auto& r : kb.rules) {
        if (r.kind != cohere::RuleKind::Contradicts) continue;
        Env env;
        if (match(r.premises[0], p, env) && match(r.conclusion, q, env) && guards_ok(r, env)) {
          return Label::Contradicts;
        }
      }
    }
  }
  for (const auto& q : hypothesis) {
    if (d.count(q)) return Label::Entails;
  }
  if (depth > 0) {
    const auto prev = closure(premises, kb, depth - 1);
    std::vector<Proposition> facts(prev.begin(), prev.end());
    for (const auto& r : kb.rules) {
      if (r.kind != cohere::RuleKind::Entails) continue;
      for (const auto& c : fire(r, facts)) {
        if (hypothesis.contains(c)) return Label::Entails;
      }
    }
  }
  return Label::NotEntails;
}

inline Label combine(Label a, Label b) {
  if (a == Label::Contradicts || b == Label::Contradicts) return Label::Contradicts;
  if (a == Label::Entails || b == Label::Entails) return Label::Entails;
  return Label::NotEntails;
}

/// Exhaustive l(l-1) pairwise evaluation.
inline std::vector<Label> classify_set(const std::vector<cohere::PropositionSet>& ex,
                                       const cohere::KnowledgeBase& kb) {
  std::vector<Label> out;
  for (std::size_t x = 0; x < ex.size(); ++x) {
    Label l = Label::NotEntails;
    for (std::size_t y = 0; y < ex.size(); ++y) {
      if (y != x) l = oracle::combine(l, classify(ex[y], ex[x], kb));
    }
    out.push_back(l);
  }
  return out;
}

/// Vertex set of the filtered sub-graph, straight from the set-builder form.
inline std::set<std::string> filter_vertices(const cohere::SceneGraph& g, const cohere::Plan& plan,
                                             std::size_t step) {
  std::set<std::string> args(plan.steps.at(step).args.begin(), plan.steps.at(step).args.end());
  std::set<std::string> out;
  for (const auto& [name, node] : g.nodes()) {
    if (args.count(name)) out.insert(name);
  }
  for (const auto& e : g.edges()) {
    if (args.count(e.src)) out.insert(e.dst);
    if (args.count(e.dst)) out.insert(e.src);
  }
  return out;
}

}  // namespace oracle
