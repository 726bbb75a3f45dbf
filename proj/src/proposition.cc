#include "cohere/proposition.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "cohere/error.h"

namespace cohere {

ParseError::ParseError(std::size_t offset, const std::string& expected, const std::string& input)
    : Error("parse error at byte " + std::to_string(offset) + ": expected " + expected +
            " in \"" + input + "\""),
      offset_(offset),
      expected_(expected) {}

LineError::LineError(std::string file, std::size_t line, const std::string& what)
    : Error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)), line_(line) {}

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string canonical_integer(std::string_view digits) {
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return "0";
  return std::string(digits.substr(first));
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_lower(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return is_lower(c) || is_digit(c) || c == '_'; });
}

bool is_variable_name(std::string_view s) {
  if (s.empty() || !is_upper(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return is_lower(c) || is_upper(c) || is_digit(c) || c == '_';
  });
}

bool is_integer_literal(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

Term Term::ident(std::string name) {
  if (!is_identifier(name)) throw ValidationError("invalid identifier '" + name + "'");
  return Term(Kind::Ident, std::move(name));
}

Term Term::integer(std::uint64_t value) { return Term(Kind::Int, std::to_string(value)); }

Term Term::variable(std::string name) {
  if (!is_variable_name(name)) throw ValidationError("invalid variable '" + name + "'");
  return Term(Kind::Var, std::move(name));
}

Term Term::parse(std::string_view text) {
  if (is_integer_literal(text)) {
    std::string canon = canonical_integer(text);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(canon.data(), canon.data() + canon.size(), v);
    if (ec != std::errc() || ptr != canon.data() + canon.size()) {
      throw ValidationError("integer out of range '" + std::string(text) + "'");
    }
    return Term(Kind::Int, std::move(canon));
  }
  if (is_variable_name(text)) return Term(Kind::Var, std::string(text));
  return ident(std::string(text));
}

std::uint64_t Term::value() const {
  if (kind_ != Kind::Int) throw std::logic_error("Term::value on non-integer term " + text_);
  std::uint64_t v = 0;
  std::from_chars(text_.data(), text_.data() + text_.size(), v);
  return v;
}

Proposition::Proposition(bool polarity, std::string predicate, std::vector<Term> args,
                         std::optional<Term> ordinal)
    : polarity(polarity),
      predicate(std::move(predicate)),
      args(std::move(args)),
      ordinal(std::move(ordinal)) {}

Proposition Proposition::fact(std::string predicate, const std::vector<std::string>& args,
                              std::optional<std::uint64_t> ordinal, bool polarity) {
  std::vector<Term> terms;
  terms.reserve(args.size());
  for (const auto& a : args) {
    Term t = Term::parse(a);
    if (t.is_variable()) throw ValidationError("variable '" + a + "' in grounded fact");
    terms.push_back(std::move(t));
  }
  std::optional<Term> ord;
  if (ordinal) ord = Term::integer(*ordinal);
  Proposition p(polarity, std::move(predicate), std::move(terms), std::move(ord));
  p.validate();
  return p;
}

bool Proposition::is_grounded() const {
  if (ordinal && ordinal->is_variable()) return false;
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::optional<std::uint64_t> Proposition::ordinal_value() const {
  if (!ordinal || ordinal->kind() != Term::Kind::Int) return std::nullopt;
  return ordinal->value();
}

Proposition Proposition::negated() const {
  Proposition p = *this;
  p.polarity = !p.polarity;
  return p;
}

void Proposition::validate(bool allow_variables) const {
  if (!is_identifier(predicate)) throw ValidationError("invalid predicate '" + predicate + "'");
  if (ordinal) {
    if (ordinal->kind() == Term::Kind::Ident) {
      throw ValidationError("ordinal must be an integer or variable in " +
                            serialize_proposition(*this));
    }
  }
  if (!allow_variables && !is_grounded()) {
    throw ValidationError("variable outside rule pattern in " + serialize_proposition(*this));
  }
}

std::ostream& operator<<(std::ostream& os, const Proposition& p) {
  return os << serialize_proposition(p);
}

namespace {

class Reader {
 public:
  Reader(std::string_view text, std::size_t pos, VariablePolicy policy)
      : text_(text), pos_(pos), policy_(policy) {}

  Proposition read() {
    Proposition p;
    skip_ws();
    if (peek() == '@') {
      ++pos_;
      skip_ws();
      std::size_t at = pos_;
      std::string tok = word();
      if (is_integer_literal(tok)) {
        p.ordinal = Term::parse(tok);
      } else if (is_variable_name(tok)) {
        reject_variable(at, tok);
        p.ordinal = Term::variable(tok);
      } else {
        fail(at, "ordinal integer after '@'");
      }
      expect(':');
    }
    skip_ws();
    if (peek() == '!') {
      ++pos_;
      p.polarity = false;
    }
    skip_ws();
    std::size_t at = pos_;
    p.predicate = word();
    if (!is_identifier(p.predicate)) fail(at, "lowercase predicate identifier");
    expect('(');
    skip_ws();
    if (peek() == ')') {
      ++pos_;
      return p;
    }
    while (true) {
      skip_ws();
      std::size_t term_at = pos_;
      std::string tok = word();
      if (is_identifier(tok) || is_integer_literal(tok)) {
        p.args.push_back(Term::parse(tok));
      } else if (is_variable_name(tok)) {
        reject_variable(term_at, tok);
        p.args.push_back(Term::variable(tok));
      } else {
        fail(term_at, "term (identifier, integer or variable)");
      }
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      return p;
    }
  }

  std::size_t pos() const { return pos_; }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r' || text_[pos_] == '\n')) {
      ++pos_;
    }
  }

  std::string word() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (is_lower(c) || is_upper(c) || is_digit(c) || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(pos_, std::string("'") + c + "'");
    ++pos_;
  }

  void reject_variable(std::size_t at, const std::string& tok) {
    if (policy_ == VariablePolicy::Reject) {
      throw ParseError(at, "constant (variable '" + tok + "' is only legal in rule files)",
                       std::string(text_));
    }
  }

  [[noreturn]] void fail(std::size_t at, const std::string& expected) const {
    throw ParseError(at, expected, std::string(text_));
  }

  std::string_view text_;
  std::size_t pos_;
  VariablePolicy policy_;
};

}  // namespace

Proposition parse_proposition_at(std::string_view text, std::size_t& pos,
                                 VariablePolicy variables) {
  Reader reader(text, pos, variables);
  Proposition p = reader.read();
  pos = reader.pos();
  return p;
}

Proposition parse_proposition(std::string_view text, VariablePolicy variables) {
  std::size_t pos = 0;
  Proposition p = parse_proposition_at(text, pos, variables);
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' ||
                               text[pos] == '\n')) {
    ++pos;
  }
  if (pos != text.size()) throw ParseError(pos, "end of input", std::string(text));
  return p;
}

std::string serialize_proposition(const Proposition& p) {
  std::string out;
  if (p.ordinal) {
    out += '@';
    out += p.ordinal->text();
    out += ':';
  }
  if (!p.polarity) out += '!';
  out += p.predicate;
  out += '(';
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i > 0) out += ',';
    out += p.args[i].text();
  }
  out += ')';
  return out;
}

PropositionSet PropositionSet::unordered(std::vector<Proposition> props) {
  return PropositionSet(std::move(props), false);
}

PropositionSet PropositionSet::sequence(std::vector<Proposition> props) {
  std::optional<std::uint64_t> last;
  for (const auto& p : props) {
    auto ord = p.ordinal_value();
    if (!ord) {
      throw ValidationError("ordered proposition set member without ordinal: " +
                            serialize_proposition(p));
    }
    if (last && *ord <= *last) {
      throw ValidationError("ordinals must be strictly increasing at " + serialize_proposition(p));
    }
    last = ord;
  }
  return PropositionSet(std::move(props), true);
}

bool PropositionSet::contains(const Proposition& p) const {
  return std::find(props_.begin(), props_.end(), p) != props_.end();
}

bool PropositionSet::is_grounded() const {
  return std::all_of(props_.begin(), props_.end(),
                     [](const Proposition& p) { return p.is_grounded(); });
}

bool operator==(const PropositionSet& a, const PropositionSet& b) {
  if (a.ordered_ != b.ordered_) return false;
  if (a.ordered_) return a.props_ == b.props_;
  if (a.props_.size() != b.props_.size()) return false;
  std::vector<Proposition> x = a.props_;
  std::vector<Proposition> y = b.props_;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

}  // namespace cohere
