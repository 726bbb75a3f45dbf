#include "cohere/text_bridge.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "cohere/error.h"

namespace cohere {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
}

// Words that never belong inside an object or verb slot.
const std::set<std::string, std::less<>> kBoundaryWords = {
    "a",    "an",   "the",   "and",   "but",  "or",   "because", "so",   "while", "when",
    "then", "which", "that", "since", "after", "before", "is",   "was",  "were",  "are",
    "at",   "with", "from",  "in",    "of",   "to",   "it",      "its",  "could", "not"};

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Replaces every {NAME} in `tmpl` via `value_of`.
template <typename F>
std::string fill_template(const std::string& tmpl, F&& value_of) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t close = tmpl.find('}', i);
      if (close == std::string::npos) throw ValidationError("unterminated slot in " + tmpl);
      out += value_of(tmpl.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

std::optional<std::string> slot_value(const std::vector<std::string>& tokens, std::size_t pos,
                                      std::size_t len) {
  std::string value;
  for (std::size_t i = pos; i < pos + len; ++i) {
    const std::string& t = tokens[i];
    if (!is_word_char(t[0]) || kBoundaryWords.count(t)) return std::nullopt;
    if (!value.empty()) value += '_';
    value += t;
  }
  std::replace(value.begin(), value.end(), '-', '_');
  if (!is_identifier(value) && !is_integer_literal(value)) return std::nullopt;
  return value;
}

using SlotMap = std::map<std::string, std::string>;

std::optional<std::size_t> match_at(const LexiconEntry& entry, std::size_t k,
                                    const std::vector<std::string>& tokens, std::size_t pos,
                                    SlotMap& slots) {
  if (k == entry.surface.size()) return pos;
  const auto& tok = entry.surface[k];
  if (!tok.slot) {
    if (pos < tokens.size() && tokens[pos] == tok.text) {
      return match_at(entry, k + 1, tokens, pos + 1, slots);
    }
    return std::nullopt;
  }
  const std::size_t avail = std::min(Lexicon::kMaxSlotWords, tokens.size() - pos);
  const bool trailing = k + 1 == entry.surface.size();
  // Inner slots take the shortest span that lets the rest match; a trailing
  // slot has nothing to anchor it, so it takes the longest.
  for (std::size_t step = 0; step < avail; ++step) {
    std::size_t len = trailing ? avail - step : step + 1;
    auto value = slot_value(tokens, pos, len);
    if (!value) continue;
    auto prior = slots.find(tok.text);
    if (prior != slots.end() && prior->second != *value) continue;
    SlotMap trial = slots;
    trial[tok.text] = *value;
    if (auto end = match_at(entry, k + 1, tokens, pos + len, trial)) {
      slots = std::move(trial);
      return end;
    }
  }
  return std::nullopt;
}

LexiconEntry parse_entry(std::string_view line) {
  std::size_t arrow = line.find("=>");
  if (arrow == std::string_view::npos) throw ValidationError("missing '=>'");
  LexiconEntry entry;
  std::string surface = trim(line.substr(0, arrow));
  entry.prop_template = trim(line.substr(arrow + 2));

  std::set<std::string> surface_slots;
  bool has_literal = false;
  std::istringstream words(surface);
  std::string w;
  while (words >> w) {
    if (w.size() > 2 && w.front() == '{' && w.back() == '}') {
      std::string name = w.substr(1, w.size() - 2);
      if (!is_variable_name(name)) throw ValidationError("bad slot name {" + name + "}");
      surface_slots.insert(name);
      entry.surface.push_back({true, name});
    } else {
      for (auto& t : tokenize(w)) {
        entry.surface.push_back({false, t});
        has_literal = true;
      }
    }
  }
  if (!has_literal) throw ValidationError("surface template needs at least one literal word");

  std::string probe = fill_template(entry.prop_template, [&](const std::string& name) {
    if (!surface_slots.count(name)) {
      throw ValidationError("slot {" + name + "} is not bound by the surface template");
    }
    return std::string("x");
  });
  try {
    parse_proposition(probe);
  } catch (const ParseError& e) {
    throw ValidationError(std::string("bad proposition template: ") + e.what());
  }
  return entry;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (is_word_char(c)) {
      std::size_t start = i;
      while (i < text.size() && is_word_char(text[i])) ++i;
      tokens.push_back(to_lower(text.substr(start, i - start)));
    } else {
      tokens.emplace_back(1, c);
      ++i;
    }
  }
  return tokens;
}

Lexicon Lexicon::parse(std::string_view text, const std::string& source) {
  std::vector<LexiconEntry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    try {
      LexiconEntry entry = parse_entry(line);
      entry.line = line_no;
      entries.push_back(std::move(entry));
    } catch (const ValidationError& e) {
      throw LineError(source, line_no, e.what());
    }
  }
  return Lexicon(std::move(entries));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

PropositionSet parse_explanation_text(std::string_view text, const Lexicon& lexicon) {
  if (lexicon.empty()) throw ValidationError("lexicon is empty");
  const std::vector<std::string> tokens = tokenize(text);
  std::vector<Proposition> props;
  std::set<Proposition> seen;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    std::optional<std::size_t> consumed;
    for (const auto& entry : lexicon.entries()) {
      SlotMap slots;
      auto end = match_at(entry, 0, tokens, pos, slots);
      if (!end) continue;
      std::string filled = fill_template(entry.prop_template,
                                         [&](const std::string& name) { return slots.at(name); });
      Proposition p = parse_proposition(filled);
      if (seen.insert(p).second) props.push_back(std::move(p));
      consumed = end;
      break;
    }
    pos = consumed ? *consumed : pos + 1;
  }
  return PropositionSet::unordered(std::move(props));
}

TextualExplanation TextualExplanation::parse(std::string raw_text, const Lexicon& lexicon) {
  PropositionSet props = parse_explanation_text(raw_text, lexicon);
  return {std::move(raw_text), std::move(props)};
}

std::string serialize_premise(const PropositionSet& props) {
  std::vector<std::string> parts;
  parts.reserve(props.size());
  for (const auto& p : props) parts.push_back(serialize_proposition(p));
  if (!props.ordered()) std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ". ";
    out += parts[i];
  }
  return out;
}

PropositionSet parse_premise(std::string_view text, bool ordered) {
  std::vector<Proposition> props;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t sep = text.find(". ", start);
    std::string_view part = text.substr(start, sep == std::string_view::npos ? sep : sep - start);
    props.push_back(parse_proposition(part));
    if (sep == std::string_view::npos) break;
    start = sep + 2;
  }
  return ordered ? PropositionSet::sequence(std::move(props))
                 : PropositionSet::unordered(std::move(props));
}

namespace {

std::string words_of(std::string_view ident) {
  std::string out(ident);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

}  // namespace

std::string render_refined_explanation(std::string_view task, const Action& action,
                                       std::size_t time) {
  std::string act = words_of(action.name);
  for (const auto& a : action.args) {
    act += ' ';
    act += words_of(a);
  }
  return "The robot failed to complete " + words_of(task) +
         " because it was unable to perform " + act + " at step " + std::to_string(time);
}

}  // namespace cohere
