#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cohere {

/// A term of a proposition: a constant (identifier or integer) or, inside
/// rule patterns only, a variable.
class Term {
 public:
  enum class Kind : std::uint8_t { Ident, Int, Var };

  static Term ident(std::string name);
  static Term integer(std::uint64_t value);
  static Term variable(std::string name);
  /// Classifies `text` as identifier, integer or variable by its first byte.
  static Term parse(std::string_view text);

  Kind kind() const { return kind_; }
  const std::string& text() const { return text_; }
  bool is_variable() const { return kind_ == Kind::Var; }
  bool is_constant() const { return kind_ != Kind::Var; }
  /// Numeric value of an Int term.
  std::uint64_t value() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

  Kind kind_ = Kind::Ident;
  std::string text_;
};

bool is_identifier(std::string_view s);
bool is_variable_name(std::string_view s);
bool is_integer_literal(std::string_view s);

/// A possibly negated predicate over terms, optionally tagged with a plan-step
/// ordinal. Grounded propositions carry constants only; rule patterns may carry
/// variables in argument and ordinal position.
struct Proposition {
  bool polarity = true;
  std::string predicate;
  std::vector<Term> args;
  std::optional<Term> ordinal;  // Int, or Var in patterns

  Proposition() = default;
  Proposition(bool polarity, std::string predicate, std::vector<Term> args,
              std::optional<Term> ordinal = std::nullopt);

  /// Convenience for grounded facts: every arg is classified with Term::parse.
  static Proposition fact(std::string predicate, const std::vector<std::string>& args,
                          std::optional<std::uint64_t> ordinal = std::nullopt,
                          bool polarity = true);

  bool is_grounded() const;
  std::optional<std::uint64_t> ordinal_value() const;
  Proposition negated() const;
  /// Throws ValidationError when an invariant does not hold.
  void validate(bool allow_variables = false) const;

  friend bool operator==(const Proposition&, const Proposition&) = default;
  friend auto operator<=>(const Proposition&, const Proposition&) = default;
};

std::ostream& operator<<(std::ostream& os, const Proposition& p);

enum class VariablePolicy { Reject, Allow };

/// Parses `[@INT:][!]ident(term, ...)`. Throws ParseError.
Proposition parse_proposition(std::string_view text,
                              VariablePolicy variables = VariablePolicy::Reject);

/// Reads one proposition starting at `pos` (leading whitespace skipped) and
/// leaves `pos` just past its closing parenthesis. Used by line-oriented
/// readers that embed propositions in a larger grammar.
Proposition parse_proposition_at(std::string_view text, std::size_t& pos,
                                 VariablePolicy variables);

/// Canonical form without whitespace; parse_proposition inverts it.
std::string serialize_proposition(const Proposition& p);

/// Collection of propositions. Unordered sets compare as multisets; ordered
/// sets are plan-derived sequences with strictly increasing ordinals.
class PropositionSet {
 public:
  PropositionSet() = default;

  static PropositionSet unordered(std::vector<Proposition> props);
  /// Throws ValidationError unless every member has a strictly increasing ordinal.
  static PropositionSet sequence(std::vector<Proposition> props);

  bool ordered() const { return ordered_; }
  const std::vector<Proposition>& props() const { return props_; }
  std::size_t size() const { return props_.size(); }
  bool empty() const { return props_.empty(); }
  auto begin() const { return props_.begin(); }
  auto end() const { return props_.end(); }
  bool contains(const Proposition& p) const;
  bool is_grounded() const;

  friend bool operator==(const PropositionSet& a, const PropositionSet& b);

 private:
  PropositionSet(std::vector<Proposition> props, bool ordered)
      : props_(std::move(props)), ordered_(ordered) {}

  std::vector<Proposition> props_;
  bool ordered_ = false;
};

}  // namespace cohere
