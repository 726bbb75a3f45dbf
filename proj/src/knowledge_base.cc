#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cohere/entailment.h"
#include "cohere/error.h"

namespace cohere {

namespace {

void collect_vars(const Proposition& p, std::set<std::string>& out) {
  if (p.ordinal && p.ordinal->is_variable()) out.insert(p.ordinal->text());
  for (const auto& t : p.args) {
    if (t.is_variable()) out.insert(t.text());
  }
}

std::string_view op_text(GuardOp op) {
  switch (op) {
    case GuardOp::Less: return "<";
    case GuardOp::LessEqual: return "<=";
    case GuardOp::Equal: return "=";
  }
  return "?";
}

}  // namespace

std::string Rule::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (i > 0) out += " & ";
    out += serialize_proposition(premises[i]);
  }
  out += kind == RuleKind::Entails ? " -> " : " >< ";
  out += serialize_proposition(conclusion);
  for (std::size_t i = 0; i < guards.size(); ++i) {
    out += i == 0 ? " | " : ", ";
    out += guards[i].lhs;
    out += ' ';
    out += op_text(guards[i].op);
    out += ' ';
    out += guards[i].rhs;
  }
  return out;
}

void Rule::validate() const {
  if (premises.empty()) throw ValidationError("rule has no premise pattern");
  if (kind == RuleKind::Contradicts && premises.size() != 1) {
    throw ValidationError("contradiction rules relate exactly two patterns");
  }
  for (const auto& p : premises) p.validate(true);
  conclusion.validate(true);

  std::set<std::string> bound;
  for (const auto& p : premises) collect_vars(p, bound);
  if (kind == RuleKind::Entails) {
    std::set<std::string> needed;
    collect_vars(conclusion, needed);
    for (const auto& v : needed) {
      if (!bound.count(v)) {
        throw ValidationError("variable " + v + " in conclusion is not bound by any premise");
      }
    }
  } else {
    // Both sides are matched against grounded facts, so either may bind.
    collect_vars(conclusion, bound);
  }
  for (const auto& g : guards) {
    for (const auto* v : {&g.lhs, &g.rhs}) {
      if (!bound.count(*v)) throw ValidationError("guard variable " + *v + " is not bound");
    }
  }
}

void KnowledgeBase::add(Rule rule) {
  if (rule.id.empty()) rule.id = "r" + std::to_string(rules.size() + 1);
  rule.validate();
  auto check_unique = [this](const std::string& id) {
    if (find(id) != nullptr) throw ValidationError("duplicate rule id " + id);
  };
  check_unique(rule.id);
  if (rule.kind == RuleKind::Contradicts) {
    Rule mirror = rule;
    mirror.id = rule.id + "~";
    mirror.premises = {rule.conclusion};
    mirror.conclusion = rule.premises.front();
    check_unique(mirror.id);
    rules.push_back(std::move(rule));
    rules.push_back(std::move(mirror));
  } else {
    rules.push_back(std::move(rule));
  }
}

const Rule* KnowledgeBase::find(std::string_view id) const {
  for (const auto& r : rules) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::size_t KnowledgeBase::count(RuleKind kind) const {
  std::size_t n = 0;
  for (const auto& r : rules) n += r.kind == kind;
  return n;
}

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
}

bool consume(std::string_view s, std::size_t& pos, std::string_view tok) {
  skip_ws(s, pos);
  if (s.substr(pos, tok.size()) == tok) {
    pos += tok.size();
    return true;
  }
  return false;
}

std::string read_var(std::string_view s, std::size_t& pos) {
  skip_ws(s, pos);
  std::size_t start = pos;
  while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
    ++pos;
  }
  std::string v(s.substr(start, pos - start));
  if (!is_variable_name(v)) throw ParseError(start, "guard variable", std::string(s));
  return v;
}

Rule parse_rule_line(std::string_view line) {
  Rule rule;
  std::size_t pos = 0;
  rule.premises.push_back(parse_proposition_at(line, pos, VariablePolicy::Allow));
  while (consume(line, pos, "&")) {
    rule.premises.push_back(parse_proposition_at(line, pos, VariablePolicy::Allow));
  }
  if (consume(line, pos, "->")) {
    rule.kind = RuleKind::Entails;
  } else if (consume(line, pos, "><")) {
    if (rule.premises.size() != 1) {
      throw ParseError(pos, "single pattern on the left of '><'", std::string(line));
    }
    rule.kind = RuleKind::Contradicts;
  } else {
    skip_ws(line, pos);
    throw ParseError(pos, "'&', '->' or '><'", std::string(line));
  }
  rule.conclusion = parse_proposition_at(line, pos, VariablePolicy::Allow);
  if (consume(line, pos, "|")) {
    do {
      Guard g;
      g.lhs = read_var(line, pos);
      if (consume(line, pos, "<=")) {
        g.op = GuardOp::LessEqual;
      } else if (consume(line, pos, "<")) {
        g.op = GuardOp::Less;
      } else if (consume(line, pos, "=")) {
        g.op = GuardOp::Equal;
      } else {
        throw ParseError(pos, "'<', '<=' or '='", std::string(line));
      }
      g.rhs = read_var(line, pos);
      rule.guards.push_back(std::move(g));
    } while (consume(line, pos, ","));
  }
  skip_ws(line, pos);
  if (pos != line.size()) throw ParseError(pos, "end of rule", std::string(line));
  return rule;
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text, const std::string& source, std::size_t max_depth) {
  if (max_depth == 0) throw ValidationError("max_depth must be positive");
  KnowledgeBase kb;
  kb.max_depth = max_depth;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    line = line.substr(first);
    try {
      Rule rule = parse_rule_line(line);
      rule.id = "r" + std::to_string(line_no);
      rule.line = line_no;
      kb.add(std::move(rule));
    } catch (const ParseError& e) {
      throw LineError(source, line_no, e.what());
    } catch (const ValidationError& e) {
      throw LineError(source, line_no, e.what());
    }
    if (end == text.size()) break;
  }
  return kb;
}

KnowledgeBase load_kb(const std::filesystem::path& path, std::size_t max_depth) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open knowledge base " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kb(ss.str(), path.string(), max_depth);
}

}  // namespace cohere
