#include "cohere/refinement.h"

#include "cohere/error.h"

namespace cohere {

std::string_view to_string(RefinementStrategy s) {
  switch (s) {
    case RefinementStrategy::None: return "none";
    case RefinementStrategy::GraphicalSearch: return "graphical_search";
    case RefinementStrategy::GraphicalSearchPartial: return "graphical_search_partial";
    case RefinementStrategy::TextualFallback: return "textual_fallback";
  }
  return "?";
}

GraphicalExplanation graphical_explanation(const Episode& episode, std::size_t step) {
  if (step >= episode.observations.size()) {
    throw ValidationError("step " + std::to_string(step) + " has no observation");
  }
  return {plan_prefix_to_propositions(plan_prefix(episode.plan, step)),
          scene_graph_to_propositions(
              filter_scene_graph(episode.observations[step], episode.plan, step))};
}

MultimodalLabels classify_episode(const Episode& episode, std::size_t step,
                                  const PropositionSet& text, const KnowledgeBase& kb) {
  GraphicalExplanation g = graphical_explanation(episode, step);
  return classify_multimodal(g.plan, g.observation, text, kb);
}

nlohmann::json RefinementOutcome::to_json() const {
  return {{"final_text", final_text.raw_text},
          {"final_step", final_step},
          {"final_label", std::string(cohere::to_string(final_label))},
          {"strategy", std::string(cohere::to_string(strategy))}};
}

RefinementOutcome refine_contradiction(const Episode& episode, const KnowledgeBase& kb,
                                       const Lexicon& lexicon) {
  episode.validate();
  const std::size_t i = episode.failure_step;
  RefinementOutcome out;
  out.final_text = TextualExplanation::parse(
      render_refined_explanation(episode.plan.task, episode.plan.steps.at(i), i), lexicon);
  out.final_step = i;
  out.final_label = classify_episode(episode, i, out.final_text.props, kb).combined;
  out.strategy = RefinementStrategy::TextualFallback;
  return out;
}

RefinementOutcome refine_not_entails(const Episode& episode, const TextualExplanation& text,
                                     const KnowledgeBase& kb, const Lexicon& lexicon) {
  episode.validate();
  const std::size_t i = episode.failure_step;
  std::optional<std::pair<std::size_t, Label>> partial;
  for (std::size_t j : key_frames(episode.observations)) {
    if (j == i) continue;
    MultimodalLabels l = classify_episode(episode, j, text.props, kb);
    if (l.combined == Label::Entails) {
      return {text, j, l.combined, RefinementStrategy::GraphicalSearch};
    }
    if (!partial && (l.plan == Label::Entails || l.observation == Label::Entails)) {
      partial.emplace(j, l.combined);
    }
  }
  if (partial) return {text, partial->first, partial->second, RefinementStrategy::GraphicalSearchPartial};
  return refine_contradiction(episode, kb, lexicon);
}

RefinementOutcome resolve(const Episode& episode, const TextualExplanation& text,
                          const KnowledgeBase& kb, const Lexicon& lexicon) {
  episode.validate();
  const std::size_t i = episode.failure_step;
  MultimodalLabels l = classify_episode(episode, i, text.props, kb);
  switch (l.combined) {
    case Label::Entails: return {text, i, l.combined, RefinementStrategy::None};
    case Label::NotEntails: return refine_not_entails(episode, text, kb, lexicon);
    case Label::Contradicts: return refine_contradiction(episode, kb, lexicon);
  }
  throw std::logic_error("resolve: unreachable label");
}

}  // namespace cohere
