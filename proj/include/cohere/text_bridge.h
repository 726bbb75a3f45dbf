#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cohere/proposition.h"
#include "cohere/world.h"

namespace cohere {

/// One `surface => proposition` line of a lexicon file.
struct LexiconEntry {
  struct Token {
    bool slot = false;
    std::string text;  // lowercase literal, or slot name
  };

  std::vector<Token> surface;
  std::string prop_template;
  std::size_t line = 0;
};

/// Ordered pattern list mapping explanation phrases to propositions.
class Lexicon {
 public:
  /// Slots span at most this many words.
  static constexpr std::size_t kMaxSlotWords = 3;

  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries) : entries_(std::move(entries)) {}

  static Lexicon parse(std::string_view text, const std::string& source = "<lexicon>");
  static Lexicon load(const std::filesystem::path& path);

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<LexiconEntry> entries_;
};

/// Lowercased word and punctuation tokens of `text`.
std::vector<std::string> tokenize(std::string_view text);

/// Left-to-right scan; at each token the first lexicon entry that matches
/// consumes its span and emits one proposition. Unmatched tokens are skipped.
/// Never fails on content; an empty lexicon is a ValidationError.
PropositionSet parse_explanation_text(std::string_view text, const Lexicon& lexicon);

struct TextualExplanation {
  std::string raw_text;
  PropositionSet props;

  static TextualExplanation parse(std::string raw_text, const Lexicon& lexicon);
};

/// Unordered sets in lexicographic order of serialized members, sequences in
/// ordinal order, joined by ". ".
std::string serialize_premise(const PropositionSet& props);

/// Inverse of serialize_premise. Throws ParseError on malformed members.
PropositionSet parse_premise(std::string_view text, bool ordered);

/// "The robot failed to complete <task> because it was unable to perform
/// <action> at step <time>".
std::string render_refined_explanation(std::string_view task, const Action& action,
                                       std::size_t time);

}  // namespace cohere
