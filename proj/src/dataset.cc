#include "cohere/dataset.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "cohere/error.h"

namespace cohere {

using nlohmann::json;

std::string_view to_string(PairKind k) { return k == PairKind::Plan ? "plan" : "observation"; }

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    case Split::Heldout: return "heldout";
  }
  return "?";
}

std::string_view to_string(ExampleSource s) {
  return s == ExampleSource::Counterfactual ? "counterfactual" : "authored";
}

PairKind pair_kind_from_string(std::string_view s) {
  if (s == "plan") return PairKind::Plan;
  if (s == "observation") return PairKind::Observation;
  throw ValidationError("unknown pair_kind '" + std::string(s) + "'");
}

Split split_from_string(std::string_view s) {
  for (Split x : {Split::Train, Split::Val, Split::Test, Split::Heldout}) {
    if (to_string(x) == s) return x;
  }
  throw ValidationError("unknown split '" + std::string(s) + "'");
}

ExampleSource example_source_from_string(std::string_view s) {
  if (s == "counterfactual") return ExampleSource::Counterfactual;
  if (s == "authored") return ExampleSource::Authored;
  throw ValidationError("unknown provenance '" + std::string(s) + "'");
}

void SplitConfig::validate() const {
  double sum = 0;
  for (double r : ratios) {
    if (!(r > 0)) throw ValidationError("split ratios must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("split ratios must sum to 1");
}

std::array<std::size_t, 3> largest_remainder(std::size_t total,
                                             const std::array<double, 3>& ratios) {
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> rest{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    double exact = ratios[i] * static_cast<double>(total);
    // Guard against 0.7 * 620 landing at 433.99999.
    double fl = std::floor(exact + 1e-9);
    counts[i] = static_cast<std::size_t>(fl);
    rest[i] = exact - fl;
    assigned += counts[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rest[a] > rest[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++counts[order[k % 3]];
  return counts;
}

std::vector<LabeledExample> stratified_split(std::vector<LabeledExample> examples,
                                             const SplitConfig& config) {
  config.validate();
  if (examples.empty()) throw ValidationError("stratified_split: no examples");
  std::array<std::vector<std::size_t>, 3> by_class;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto& ex = examples[i];
    if (config.heldout_tasks.count(ex.task)) {
      ex.split = Split::Heldout;
    } else {
      by_class[static_cast<std::size_t>(ex.label)].push_back(i);
    }
  }
  if (by_class[0].empty() && by_class[1].empty() && by_class[2].empty()) {
    throw ValidationError("stratified_split: every example belongs to a heldout task");
  }
  std::mt19937_64 rng(config.seed);
  for (std::size_t c = 0; c < 3; ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 3) {
      throw ValidationError("stratified_split: class " + std::string(to_string(Label(c))) +
                            " has " + std::to_string(members.size()) +
                            " members, need at least 3");
    }
    for (std::size_t i = members.size() - 1; i > 0; --i) {
      std::swap(members[i], members[rng() % (i + 1)]);
    }
    auto counts = largest_remainder(members.size(), config.ratios);
    std::size_t k = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t n = 0; n < counts[s]; ++n) examples[members[k++]].split = Split(s);
    }
  }
  return examples;
}

EvalReport evaluate(const std::vector<Label>& gold, const std::vector<Label>& predicted) {
  if (gold.size() != predicted.size()) {
    throw ValidationError("evaluate: " + std::to_string(gold.size()) + " gold labels vs " +
                          std::to_string(predicted.size()) + " predictions");
  }
  if (gold.empty()) throw ValidationError("evaluate: no examples");
  EvalReport r;
  r.total = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++r.confusion[static_cast<std::size_t>(gold[i])][static_cast<std::size_t>(predicted[i])];
  }
  double sum = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    double tp = r.confusion[c][c];
    double col = 0, row = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      col += r.confusion[k][c];
      row += r.confusion[c][k];
    }
    double p = col > 0 ? tp / col : 0.0;
    double rec = row > 0 ? tp / row : 0.0;
    r.per_class_f1[c] = p + rec > 0 ? 2 * p * rec / (p + rec) : 0.0;
    sum += r.per_class_f1[c];
  }
  r.macro_f1 = sum / 3.0;
  return r;
}

json EvalReport::to_json() const {
  json conf = json::array();
  for (const auto& row : confusion) conf.push_back(row);
  json f1 = json::object();
  for (Label l : kAllLabels) f1[std::string(to_string(l))] = per_class_f1[static_cast<std::size_t>(l)];
  json labels = json::array();
  for (Label l : kAllLabels) labels.push_back(std::string(to_string(l)));
  return {{"labels", labels}, {"confusion", conf}, {"per_class_f1", f1},
          {"macro_f1", macro_f1}, {"total", total}};
}

std::string EvalReport::to_table() const {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-14s %12s %12s %12s %8s\n", "gold\\pred", "not_entails",
                "entails", "contradicts", "f1");
  out << buf;
  for (Label g : kAllLabels) {
    auto gi = static_cast<std::size_t>(g);
    std::snprintf(buf, sizeof buf, "%-14s %12zu %12zu %12zu %8.4f\n",
                  std::string(to_string(g)).c_str(), confusion[gi][0], confusion[gi][1],
                  confusion[gi][2], per_class_f1[gi]);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "macro_f1 %.4f over %zu examples\n", macro_f1, total);
  out << buf;
  return out.str();
}

json to_json(const LabeledExample& ex) {
  json j;
  j["id"] = ex.id;
  j["task"] = ex.task;
  j["failure_type"] = std::string(to_string(ex.failure_type));
  j["pair_kind"] = std::string(to_string(ex.pair_kind));
  j["premise_text"] = ex.premise_text;
  j["hypothesis_text"] = ex.hypothesis_text;
  j["label"] = std::string(to_string(ex.label));
  j["split"] = ex.split ? json(std::string(to_string(*ex.split))) : json(nullptr);
  j["provenance"] = std::string(to_string(ex.provenance));
  return j;
}

namespace {

std::string text_field(const json& j, const char* name) {
  if (!j.contains(name)) throw ValidationError(std::string("missing field '") + name + "'");
  const json& v = j.at(name);
  if (!v.is_string()) throw ValidationError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

template <typename F>
void for_each_record(const std::filesystem::path& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      if (!j.is_object()) throw ValidationError("record must be a JSON object");
      f(j);
    } catch (const json::exception& ex) {
      throw LineError(path.string(), n, ex.what());
    } catch (const ValidationError& ex) {
      throw LineError(path.string(), n, ex.what());
    }
  }
}

}  // namespace

LabeledExample labeled_example_from_json(const json& j) {
  LabeledExample ex;
  ex.id = text_field(j, "id");
  ex.task = text_field(j, "task");
  ex.failure_type = failure_type_from_string(text_field(j, "failure_type"));
  ex.pair_kind = pair_kind_from_string(text_field(j, "pair_kind"));
  ex.premise_text = text_field(j, "premise_text");
  ex.hypothesis_text = text_field(j, "hypothesis_text");
  ex.label = label_from_string(text_field(j, "label"));
  if (j.contains("split") && !j.at("split").is_null()) ex.split = split_from_string(text_field(j, "split"));
  ex.provenance = example_source_from_string(text_field(j, "provenance"));
  return ex;
}

std::vector<LabeledExample> read_jsonl(const std::filesystem::path& path) {
  std::vector<LabeledExample> out;
  for_each_record(path, [&](const json& j) { out.push_back(labeled_example_from_json(j)); });
  return out;
}

void write_jsonl(std::ostream& out, const std::vector<LabeledExample>& examples) {
  for (const auto& ex : examples) out << to_json(ex).dump() << '\n';
}

void write_jsonl(const std::filesystem::path& path, const std::vector<LabeledExample>& examples) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_jsonl(out, examples);
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  std::vector<PredictionRecord> out;
  for_each_record(path, [&](const json& j) {
    PredictionRecord r;
    r.id = text_field(j, "id");
    r.predicted = label_from_string(text_field(j, j.contains("predicted") ? "predicted" : "label"));
    if (j.contains("scores") && !j.at("scores").is_null()) {
      r.scores = j.at("scores").get<std::vector<double>>();
      if (r.scores.size() != 3) throw ValidationError("scores must hold three values");
    }
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace cohere
