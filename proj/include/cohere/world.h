#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohere/proposition.h"

namespace cohere {

struct SpatialEdge {
  std::string relation;
  std::string src;
  std::string dst;

  friend bool operator==(const SpatialEdge&, const SpatialEdge&) = default;
  friend auto operator<=>(const SpatialEdge&, const SpatialEdge&) = default;
};

using StateAttribute = std::pair<std::string, std::string>;  // (attribute, value)

struct ObjectNode {
  std::string name;
  std::set<StateAttribute> states;

  friend bool operator==(const ObjectNode&, const ObjectNode&) = default;
};

/// Labeled graph of one observation: objects with state attributes and
/// directed spatial relations between them. Equality is labeled-graph
/// equality (nodes with states, edge set).
class SceneGraph {
 public:
  SceneGraph() = default;

  /// Throws ValidationError on duplicate names.
  void add_node(std::string name, std::set<StateAttribute> states = {});
  /// Throws ValidationError on a missing endpoint or duplicate triple.
  void add_edge(std::string relation, std::string src, std::string dst);

  bool remove_edge(const SpatialEdge& e);
  bool add_state(const std::string& node, StateAttribute s);
  bool remove_state(const std::string& node, const StateAttribute& s);
  void replace_edge(const SpatialEdge& from, SpatialEdge to);

  bool has_node(std::string_view name) const;
  bool has_edge(const SpatialEdge& e) const { return edges_.count(e) > 0; }
  const ObjectNode& node(std::string_view name) const;

  const std::map<std::string, ObjectNode, std::less<>>& nodes() const { return nodes_; }
  const std::set<SpatialEdge>& edges() const { return edges_; }
  bool empty() const { return nodes_.empty(); }

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;

 private:
  std::map<std::string, ObjectNode, std::less<>> nodes_;
  std::set<SpatialEdge> edges_;
};

/// A grounded plan step.
struct Action {
  std::string name;
  std::vector<std::string> args;
  PropositionSet preconditions;
  PropositionSet effects;

  /// `name(a,b)` without ordinal.
  Proposition as_proposition(std::optional<std::uint64_t> ordinal = std::nullopt) const;
  std::string to_string() const;

  friend bool operator==(const Action& a, const Action& b) {
    return a.name == b.name && a.args == b.args;
  }
};

struct Plan {
  std::string task;
  std::vector<Action> steps;

  std::size_t size() const { return steps.size(); }
  friend bool operator==(const Plan&, const Plan&) = default;
};

enum class FailureType { UnexpectedDynamics, FailedExecution, WrongOrder, MissingAction };

inline constexpr FailureType kAllFailureTypes[] = {
    FailureType::UnexpectedDynamics, FailureType::FailedExecution, FailureType::WrongOrder,
    FailureType::MissingAction};

std::string_view to_string(FailureType t);
/// Throws ValidationError on names outside the closed set.
FailureType failure_type_from_string(std::string_view s);

/// Plan plus the observation taken at each executed step. Observation k is the
/// scene after attempting plan step k, so observations never outnumber steps.
struct Episode {
  Plan plan;
  std::vector<SceneGraph> observations;
  std::size_t failure_step = 0;
  FailureType failure_type = FailureType::UnexpectedDynamics;

  void validate() const;
};

/// Sub-graph of objects relevant to plan step `step`: the action's arguments
/// present in `graph` plus every node sharing an edge with one of them, with
/// the edges induced on that vertex set.
SceneGraph filter_scene_graph(const SceneGraph& graph, const Plan& plan, std::size_t step);

/// Steps 0..step inclusive.
Plan plan_prefix(const Plan& plan, std::size_t step);

/// Index 0 plus every index whose graph differs from its predecessor.
std::vector<std::size_t> key_frames(const std::vector<SceneGraph>& observations);

/// Edges become `rel(src,dst)`, node states become `attr(node,value)`.
PropositionSet scene_graph_to_propositions(const SceneGraph& graph);

/// Step k becomes `@k:name(args)`.
PropositionSet plan_prefix_to_propositions(const Plan& plan);

}  // namespace cohere
