#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohere/entailment.h"
#include "cohere/example.h"

namespace cohere {

struct SplitConfig {
  std::array<double, 3> ratios{0.70, 0.10, 0.20};  // train, val, test
  std::set<std::string> heldout_tasks;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Heldout-task examples go to Split::Heldout; the rest are partitioned per
/// gold label by largest-remainder rounding after a seeded shuffle. Throws
/// ValidationError when a remaining class has fewer than 3 members or when
/// nothing remains outside the heldout tasks.
std::vector<LabeledExample> stratified_split(std::vector<LabeledExample> examples,
                                             const SplitConfig& config);

/// Per-class counts for `total` items under `ratios`, summing to `total`.
std::array<std::size_t, 3> largest_remainder(std::size_t total, const std::array<double, 3>& ratios);

struct EvalReport {
  /// confusion[gold][predicted], indexed by Label.
  std::array<std::array<std::size_t, 3>, 3> confusion{};
  std::array<double, 3> per_class_f1{};
  double macro_f1 = 0.0;
  std::size_t total = 0;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Throws ValidationError on empty input or a length mismatch.
EvalReport evaluate(const std::vector<Label>& gold, const std::vector<Label>& predicted);

nlohmann::json to_json(const LabeledExample& ex);
LabeledExample labeled_example_from_json(const nlohmann::json& j);

/// One record per line. Errors carry the 1-based line number.
std::vector<LabeledExample> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<LabeledExample>& examples);
void write_jsonl(std::ostream& out, const std::vector<LabeledExample>& examples);

/// Classifier output keyed by example id.
struct PredictionRecord {
  std::string id;
  Label predicted = Label::NotEntails;
  std::vector<double> scores;  // optional, in Label order
};

/// Accepts PredictionRecord lines (`predicted`) or LabeledExample lines
/// (`label`).
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

}  // namespace cohere
