#pragma once

#include <cstddef>
#include <string_view>

#include "json.hpp"

#include "cohere/entailment.h"
#include "cohere/text_bridge.h"
#include "cohere/world.h"

namespace cohere {

/// Plan prefix and filtered observation at one step of an episode.
struct GraphicalExplanation {
  PropositionSet plan;
  PropositionSet observation;
};

GraphicalExplanation graphical_explanation(const Episode& episode, std::size_t step);

/// Labels of the episode's explanation at `step` against `text`.
MultimodalLabels classify_episode(const Episode& episode, std::size_t step,
                                  const PropositionSet& text, const KnowledgeBase& kb);

enum class RefinementStrategy { None, GraphicalSearch, GraphicalSearchPartial, TextualFallback };

std::string_view to_string(RefinementStrategy s);

struct RefinementOutcome {
  TextualExplanation final_text;
  std::size_t final_step = 0;
  Label final_label = Label::NotEntails;  // recomputed on the final pair
  RefinementStrategy strategy = RefinementStrategy::None;

  nlohmann::json to_json() const;
};

/// Scans key frames other than the failure step in ascending order for one
/// whose combined label is Entails, then for one where either side entails,
/// and otherwise falls back to the template text.
RefinementOutcome refine_not_entails(const Episode& episode, const TextualExplanation& text,
                                     const KnowledgeBase& kb, const Lexicon& lexicon);

/// Replaces the text with the failed-action template at the failure step.
RefinementOutcome refine_contradiction(const Episode& episode, const KnowledgeBase& kb,
                                       const Lexicon& lexicon);

/// Classifies the original pair and dispatches on the combined label.
RefinementOutcome resolve(const Episode& episode, const TextualExplanation& text,
                          const KnowledgeBase& kb, const Lexicon& lexicon);

}  // namespace cohere
