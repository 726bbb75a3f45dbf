#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohere/proposition.h"
#include "cohere/world.h"

namespace cohere {

/// Lifted action with preconditions and effects over its formal parameters.
struct ActionSchema {
  std::string name;
  std::vector<std::string> params;  // variable names
  std::vector<Proposition> preconditions;
  std::vector<Proposition> effects;

  /// Throws ValidationError on arity mismatch.
  Action ground(const std::vector<std::string>& args) const;
};

enum class PredicateKind { Relation, State };

struct PredicateSpec {
  std::string name;
  std::size_t arity = 2;
  PredicateKind kind = PredicateKind::Relation;
};

struct ObjectSpec {
  std::string name;
  std::string kind;  // item, fixture, appliance, agent, substance
};

enum class TaskGroup { Counterfactual, Heldout, Extra };

struct TaskSpec {
  std::string name;
  Plan plan;  // grounded canonical plan
  TaskGroup group = TaskGroup::Counterfactual;
  std::vector<std::string> explanations;
};

/// Replay of a plan from an initial scene. A step whose preconditions fail
/// leaves the scene unchanged.
struct ReplayResult {
  std::vector<SceneGraph> observations;  // scene after each step
  std::optional<std::size_t> first_violation;
  std::optional<Proposition> violated_precondition;

  bool executable() const { return !first_violation.has_value(); }
};

class DomainSpec {
 public:
  static DomainSpec from_json(const nlohmann::json& j,
                              const std::filesystem::path& base_dir = {});
  /// Throws IoError or ValidationError.
  static DomainSpec load(const std::filesystem::path& path);

  const std::map<std::string, TaskSpec>& tasks() const { return tasks_; }
  const TaskSpec& task(const std::string& name) const;
  const ActionSchema& schema(const std::string& name) const;
  const std::map<std::string, ActionSchema>& schemas() const { return schemas_; }
  const std::vector<ObjectSpec>& objects() const { return objects_; }
  const std::map<std::string, PredicateSpec>& predicates() const { return predicates_; }
  const SceneGraph& initial_graph(const std::string& task) const;
  /// Relations of the given arity, sorted by name.
  std::vector<std::string> relations_with_arity(std::size_t arity) const;
  PredicateKind kind_of(const std::string& predicate) const;
  std::vector<std::string> tasks_in(TaskGroup group) const;
  const std::filesystem::path& lexicon_path() const { return lexicon_path_; }

  /// Re-grounds a plan read from an episode file against the schemas.
  Plan ground(const Plan& plan) const;

  bool holds(const Proposition& condition, const SceneGraph& graph) const;
  void apply(const Action& action, SceneGraph& graph) const;
  ReplayResult replay(const Plan& plan, const SceneGraph& initial) const;

  /// Every task plan instantiates declared schemas and replays cleanly.
  void validate() const;

 private:
  std::map<std::string, TaskSpec> tasks_;
  std::map<std::string, ActionSchema> schemas_;
  std::vector<ObjectSpec> objects_;
  std::map<std::string, PredicateSpec> predicates_;
  std::map<std::string, SceneGraph> initial_graphs_;
  std::filesystem::path lexicon_path_;
};

std::string_view to_string(TaskGroup g);

}  // namespace cohere
