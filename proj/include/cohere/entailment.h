#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cohere/error.h"
#include "cohere/proposition.h"

namespace cohere {

/// Coherence class of a (premise, hypothesis) pair. Enumerator order is the
/// strength order used by the monotonicity properties.
enum class Label : std::uint8_t { NotEntails = 0, Entails = 1, Contradicts = 2 };

inline constexpr Label kAllLabels[] = {Label::Entails, Label::NotEntails, Label::Contradicts};

std::string_view to_string(Label l);
/// Accepts `entails`, `not_entails`, `contradicts`.
Label label_from_string(std::string_view s);

/// Set-level composition: any Contradicts wins, then any Entails.
Label combine(Label a, Label b);

enum class RuleKind : std::uint8_t { Entails, Contradicts };

enum class GuardOp : std::uint8_t { Less, LessEqual, Equal };

struct Guard {
  std::string lhs;
  GuardOp op = GuardOp::Less;
  std::string rhs;

  friend bool operator==(const Guard&, const Guard&) = default;
};

/// Lifted rule. Entailment: the conjunction of `premises` licenses
/// `conclusion`. Contradiction: a premise fact matching premises[0] is
/// contradicted by a hypothesis fact matching `conclusion`.
struct Rule {
  std::string id;
  RuleKind kind = RuleKind::Entails;
  std::vector<Proposition> premises;
  Proposition conclusion;
  std::vector<Guard> guards;
  std::size_t line = 0;

  /// Re-renders the rule in DSL syntax.
  std::string to_string() const;
  void validate() const;
};

struct KnowledgeBase {
  std::vector<Rule> rules;
  std::size_t max_depth = 1;
  std::size_t fact_cap = 10'000;

  /// Appends a rule; contradiction rules are stored with their mirror.
  void add(Rule rule);
  const Rule* find(std::string_view id) const;
  std::size_t count(RuleKind kind) const;
};

/// Parses rule DSL text. `source` names the input in error messages.
KnowledgeBase parse_kb(std::string_view text, const std::string& source = "<kb>",
                       std::size_t max_depth = 1);
KnowledgeBase load_kb(const std::filesystem::path& path, std::size_t max_depth = 1);

using Bindings = std::map<std::string, Term, std::less<>>;

/// Minimal extension of `bindings` making `pattern` equal to the grounded
/// `fact`, or nullopt. A pattern without ordinal only matches facts without one.
std::optional<Bindings> unify(const Proposition& pattern, const Proposition& fact,
                              const Bindings& bindings = {});

/// Replaces every bound variable; unbound variables are left in place.
Proposition substitute(const Proposition& pattern, const Bindings& bindings);

/// True when every guard compares two integer-bound variables successfully.
bool guards_hold(const std::vector<Guard>& guards, const Bindings& bindings);

/// Why a derived fact exists.
struct Provenance {
  std::string rule_id;
  std::vector<Proposition> sources;
};

/// Result of forward chaining: input facts first, then derived facts in
/// derivation order, no duplicates.
struct Derivation {
  std::vector<Proposition> facts;
  std::map<Proposition, Provenance> derived;
  std::set<Proposition> members;

  bool contains(const Proposition& p) const { return members.count(p) > 0; }
};

/// Thrown when derivation grows past KnowledgeBase::fact_cap.
class DerivationLimitError : public Error {
 public:
  using Error::Error;
};

Derivation derive_facts(const PropositionSet& premises, const KnowledgeBase& kb);

/// Premises plus up to `kb.max_depth` rounds of entailment-rule conclusions.
/// Returned as an unordered set.
PropositionSet derive(const PropositionSet& premises, const KnowledgeBase& kb);

enum class WitnessKind : std::uint8_t { Identity, EntailmentRule, PolarityClash, ContradictionRule };

std::string_view to_string(WitnessKind k);

/// The proposition pair (and rule, if any) responsible for a non-NotEntails label.
struct Witness {
  WitnessKind kind = WitnessKind::Identity;
  Proposition premise;     // member of derive(premises)
  Proposition hypothesis;  // member of the hypothesis
  std::string rule_id;     // contradiction rule, or the rule that derived `premise`
  std::vector<Proposition> sources;  // original facts behind a derived premise
};

struct Verdict {
  Label label = Label::NotEntails;
  std::optional<Witness> witness;
};

/// Classifies against a precomputed derivation. Throws ValidationError on an
/// empty or non-grounded hypothesis.
Verdict classify_derived(const Derivation& premises, const PropositionSet& hypothesis,
                         const KnowledgeBase& kb);

Verdict classify_pair_explained(const PropositionSet& premises, const PropositionSet& hypothesis,
                                const KnowledgeBase& kb);

Label classify_pair(const PropositionSet& premises, const PropositionSet& hypothesis,
                    const KnowledgeBase& kb);

struct MultimodalLabels {
  Label plan = Label::NotEntails;
  Label observation = Label::NotEntails;
  Label combined = Label::NotEntails;

  friend bool operator==(const MultimodalLabels&, const MultimodalLabels&) = default;
};

MultimodalLabels classify_multimodal(const PropositionSet& plan_props,
                                     const PropositionSet& obs_props,
                                     const PropositionSet& text_props, const KnowledgeBase& kb);

/// Labels each member against all others with set-level composition. Stops
/// scanning a member's premises once a contradiction is found.
std::vector<Label> classify_set(const std::vector<PropositionSet>& explanations,
                                const KnowledgeBase& kb);

}  // namespace cohere
