#include "cohere/entailment.h"

#include <algorithm>
#include <functional>
#include <tuple>

namespace cohere {

std::string_view to_string(Label l) {
  switch (l) {
    case Label::Entails: return "entails";
    case Label::NotEntails: return "not_entails";
    case Label::Contradicts: return "contradicts";
  }
  throw std::logic_error("unknown Label");
}

Label label_from_string(std::string_view s) {
  for (Label l : kAllLabels) {
    if (to_string(l) == s) return l;
  }
  throw ValidationError("unknown label '" + std::string(s) + "'");
}

Label combine(Label a, Label b) {
  if (a == Label::Contradicts || b == Label::Contradicts) return Label::Contradicts;
  if (a == Label::Entails || b == Label::Entails) return Label::Entails;
  return Label::NotEntails;
}

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Identity: return "identity";
    case WitnessKind::EntailmentRule: return "entailment_rule";
    case WitnessKind::PolarityClash: return "polarity_clash";
    case WitnessKind::ContradictionRule: return "contradiction_rule";
  }
  throw std::logic_error("unknown WitnessKind");
}

namespace {

bool bind_term(const Term& pattern, const Term& value, Bindings& b) {
  if (!pattern.is_variable()) return pattern == value;
  auto it = b.find(pattern.text());
  if (it == b.end()) {
    b.emplace(pattern.text(), value);
    return true;
  }
  return it->second == value;
}

}  // namespace

std::optional<Bindings> unify(const Proposition& pattern, const Proposition& fact,
                              const Bindings& bindings) {
  if (pattern.polarity != fact.polarity || pattern.predicate != fact.predicate ||
      pattern.args.size() != fact.args.size()) {
    return std::nullopt;
  }
  if (pattern.ordinal.has_value() != fact.ordinal.has_value()) return std::nullopt;
  Bindings out = bindings;
  if (pattern.ordinal && !bind_term(*pattern.ordinal, *fact.ordinal, out)) return std::nullopt;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!bind_term(pattern.args[i], fact.args[i], out)) return std::nullopt;
  }
  return out;
}

Proposition substitute(const Proposition& pattern, const Bindings& bindings) {
  Proposition out = pattern;
  auto sub = [&bindings](Term& t) {
    if (!t.is_variable()) return;
    auto it = bindings.find(t.text());
    if (it != bindings.end()) t = it->second;
  };
  if (out.ordinal) sub(*out.ordinal);
  for (auto& t : out.args) sub(t);
  return out;
}

bool guards_hold(const std::vector<Guard>& guards, const Bindings& bindings) {
  for (const auto& g : guards) {
    auto l = bindings.find(g.lhs);
    auto r = bindings.find(g.rhs);
    if (l == bindings.end() || r == bindings.end()) return false;
    if (l->second.kind() != Term::Kind::Int || r->second.kind() != Term::Kind::Int) return false;
    std::uint64_t a = l->second.value();
    std::uint64_t b = r->second.value();
    bool ok = false;
    switch (g.op) {
      case GuardOp::Less: ok = a < b; break;
      case GuardOp::LessEqual: ok = a <= b; break;
      case GuardOp::Equal: ok = a == b; break;
    }
    if (!ok) return false;
  }
  return true;
}

namespace {

using IndexKey = std::tuple<std::string, bool, std::size_t>;
using FactIndex = std::map<IndexKey, std::vector<std::size_t>>;

FactIndex build_index(const std::vector<Proposition>& facts) {
  FactIndex index;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const auto& f = facts[i];
    index[{f.predicate, f.polarity, f.args.size()}].push_back(i);
  }
  return index;
}

void require_grounded(const PropositionSet& set, const char* what) {
  for (const auto& p : set) {
    if (!p.is_grounded()) {
      throw ValidationError(std::string(what) + " must be grounded: " + serialize_proposition(p));
    }
  }
}

}  // namespace

Derivation derive_facts(const PropositionSet& premises, const KnowledgeBase& kb) {
  require_grounded(premises, "premises");
  Derivation d;
  for (const auto& p : premises) {
    if (d.members.insert(p).second) d.facts.push_back(p);
  }

  for (std::size_t round = 0; round < kb.max_depth; ++round) {
    const FactIndex index = build_index(d.facts);
    const std::vector<Proposition>& facts = d.facts;
    std::vector<std::pair<Proposition, Provenance>> fresh;
    std::set<Proposition> fresh_seen;

    for (const auto& rule : kb.rules) {
      if (rule.kind != RuleKind::Entails) continue;
      std::vector<std::size_t> chosen(rule.premises.size());

      std::function<void(std::size_t, const Bindings&)> join = [&](std::size_t k,
                                                                   const Bindings& b) {
        if (k == rule.premises.size()) {
          if (!guards_hold(rule.guards, b)) return;
          Proposition c = substitute(rule.conclusion, b);
          if (d.members.count(c) || !fresh_seen.insert(c).second) return;
          Provenance prov{rule.id, {}};
          for (std::size_t i : chosen) prov.sources.push_back(facts[i]);
          fresh.emplace_back(std::move(c), std::move(prov));
          if (d.members.size() + fresh.size() > kb.fact_cap) {
            throw DerivationLimitError("derivation exceeded " + std::to_string(kb.fact_cap) +
                                       " facts (runaway rule set?)");
          }
          return;
        }
        const Proposition& pat = rule.premises[k];
        auto it = index.find({pat.predicate, pat.polarity, pat.args.size()});
        if (it == index.end()) return;
        for (std::size_t i : it->second) {
          if (auto nb = unify(pat, facts[i], b)) {
            chosen[k] = i;
            join(k + 1, *nb);
          }
        }
      };
      join(0, {});
    }

    if (fresh.empty()) break;
    for (auto& [fact, prov] : fresh) {
      d.members.insert(fact);
      d.facts.push_back(fact);
      d.derived.emplace(std::move(fact), std::move(prov));
    }
  }
  return d;
}

PropositionSet derive(const PropositionSet& premises, const KnowledgeBase& kb) {
  return PropositionSet::unordered(derive_facts(premises, kb).facts);
}

Verdict classify_derived(const Derivation& premises, const PropositionSet& hypothesis,
                         const KnowledgeBase& kb) {
  if (hypothesis.empty()) throw ValidationError("hypothesis is empty");
  require_grounded(hypothesis, "hypothesis");

  auto with_provenance = [&premises](Witness w) {
    auto it = premises.derived.find(w.premise);
    if (it != premises.derived.end()) {
      if (w.rule_id.empty()) w.rule_id = it->second.rule_id;
      w.sources = it->second.sources;
    }
    return w;
  };

  for (const auto& q : hypothesis) {
    Proposition flipped = q.negated();
    if (premises.contains(flipped)) {
      return {Label::Contradicts,
              with_provenance({WitnessKind::PolarityClash, flipped, q, {}, {}})};
    }
    for (const auto& rule : kb.rules) {
      if (rule.kind != RuleKind::Contradicts) continue;
      auto b = unify(rule.conclusion, q);
      if (!b) continue;
      for (const auto& p : premises.facts) {
        auto full = unify(rule.premises.front(), p, *b);
        if (full && guards_hold(rule.guards, *full)) {
          Witness w{WitnessKind::ContradictionRule, p, q, rule.id, {}};
          auto it = premises.derived.find(p);
          if (it != premises.derived.end()) w.sources = it->second.sources;
          return {Label::Contradicts, std::move(w)};
        }
      }
    }
  }

  for (const auto& q : hypothesis) {
    if (!premises.contains(q)) continue;
    bool derived = premises.derived.count(q) > 0;
    return {Label::Entails,
            with_provenance(
                {derived ? WitnessKind::EntailmentRule : WitnessKind::Identity, q, q, {}, {}})};
  }
  return {Label::NotEntails, std::nullopt};
}

Verdict classify_pair_explained(const PropositionSet& premises, const PropositionSet& hypothesis,
                                const KnowledgeBase& kb) {
  if (hypothesis.empty()) throw ValidationError("hypothesis is empty");
  return classify_derived(derive_facts(premises, kb), hypothesis, kb);
}

Label classify_pair(const PropositionSet& premises, const PropositionSet& hypothesis,
                    const KnowledgeBase& kb) {
  return classify_pair_explained(premises, hypothesis, kb).label;
}

MultimodalLabels classify_multimodal(const PropositionSet& plan_props,
                                     const PropositionSet& obs_props,
                                     const PropositionSet& text_props, const KnowledgeBase& kb) {
  MultimodalLabels out;
  out.plan = classify_pair(plan_props, text_props, kb);
  out.observation = classify_pair(obs_props, text_props, kb);
  out.combined = combine(out.plan, out.observation);
  return out;
}

std::vector<Label> classify_set(const std::vector<PropositionSet>& explanations,
                                const KnowledgeBase& kb) {
  if (explanations.size() < 2) throw ValidationError("classify_set needs at least two explanations");
  for (const auto& e : explanations) {
    if (e.empty()) throw ValidationError("hypothesis is empty");
  }
  std::vector<Derivation> derived;
  derived.reserve(explanations.size());
  for (const auto& e : explanations) derived.push_back(derive_facts(e, kb));

  std::vector<Label> labels(explanations.size(), Label::NotEntails);
  for (std::size_t x = 0; x < explanations.size(); ++x) {
    Label acc = Label::NotEntails;
    for (std::size_t y = 0; y < explanations.size() && acc != Label::Contradicts; ++y) {
      if (y == x) continue;
      acc = combine(acc, classify_derived(derived[y], explanations[x], kb).label);
    }
    labels[x] = acc;
  }
  return labels;
}

}  // namespace cohere
