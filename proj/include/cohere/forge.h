#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohere/domain.h"
#include "cohere/entailment.h"
#include "cohere/error.h"
#include "cohere/example.h"
#include "cohere/text_bridge.h"
#include "cohere/world.h"

namespace cohere {

/// No element of the input admits the requested perturbation.
class PerturbationError : public Error {
 public:
  using Error::Error;
};

enum class ObservationPerturbation { ReplacePredicate, ReplaceArgument, AddNegation };
enum class PlanPerturbation { DeleteProvider, ReversePair };

std::string_view to_string(ObservationPerturbation m);
std::string_view to_string(PlanPerturbation m);

struct PerturbedObservation {
  /// Set for the replace modes; negations only exist at proposition level.
  std::optional<SceneGraph> graph;
  PropositionSet props;
};

/// Deterministic per seed. `relations` is the relation vocabulary consulted
/// by ReplacePredicate (only same-arity, i.e. binary, relations apply).
PerturbedObservation perturb_observation(const SceneGraph& graph, ObservationPerturbation mode,
                                         std::uint64_t seed,
                                         const std::vector<std::string>& relations = {});

/// Every plan perturb_plan may return for `mode`, in a fixed order.
std::vector<Plan> plan_perturbation_candidates(const Plan& plan, const DomainSpec& domain,
                                              PlanPerturbation mode);

/// Removes a step whose effect feeds a later precondition, or swaps two steps
/// with identical arguments. The result never replays cleanly from the task's
/// initial graph.
Plan perturb_plan(const Plan& plan, const DomainSpec& domain, PlanPerturbation mode,
                  std::uint64_t seed);

struct GenerationConfig {
  /// Indexed like kAllFailureTypes.
  std::array<std::size_t, 4> per_failure_type{};
  /// Empty selects every counterfactual-group task of the domain.
  std::vector<std::string> tasks;
  /// Equal label quotas over the whole output.
  bool balance_labels = true;
  /// Candidate draws allowed per requested example before giving up.
  std::size_t attempts_per_example = 400;
  std::string id_prefix = "cf";

  /// Spreads `total` over the four failure types, earlier types taking the remainder.
  static GenerationConfig with_total(std::size_t total, std::vector<std::string> tasks = {});
  std::size_t total() const;
};

/// Samples episodes, injects failures, pairs a graphical premise with an
/// authored explanation and labels the pair with classify_pair. Output is
/// unique on (premise_text, hypothesis_text) and byte-stable per seed.
/// Throws Error when the candidate space runs dry.
std::vector<LabeledExample> generate_dataset(const DomainSpec& domain, const KnowledgeBase& kb,
                                             const Lexicon& lexicon,
                                             const GenerationConfig& config, std::uint64_t seed);

}  // namespace cohere
