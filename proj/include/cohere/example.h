#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cohere/entailment.h"
#include "cohere/world.h"

namespace cohere {

/// Which half of the graphical explanation supplied the premise.
enum class PairKind { Plan, Observation };

enum class Split { Train, Val, Test, Heldout };

enum class ExampleSource { Counterfactual, Authored };

std::string_view to_string(PairKind k);
std::string_view to_string(Split s);
std::string_view to_string(ExampleSource s);
PairKind pair_kind_from_string(std::string_view s);
Split split_from_string(std::string_view s);
ExampleSource example_source_from_string(std::string_view s);

/// One labeled (premise, hypothesis) record. Plan premises are serialized
/// sequences, observation premises serialized sets.
struct LabeledExample {
  std::string id;
  std::string task;
  FailureType failure_type = FailureType::UnexpectedDynamics;
  PairKind pair_kind = PairKind::Observation;
  std::string premise_text;
  std::string hypothesis_text;
  Label label = Label::NotEntails;
  std::optional<Split> split;  // unset until stratified_split runs
  ExampleSource provenance = ExampleSource::Counterfactual;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

}  // namespace cohere
