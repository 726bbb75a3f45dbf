#include "cohere/world.h"

#include <algorithm>

#include "cohere/error.h"

namespace cohere {

void SceneGraph::add_node(std::string name, std::set<StateAttribute> states) {
  if (!is_identifier(name)) throw ValidationError("invalid node name '" + name + "'");
  if (nodes_.count(name) > 0) throw ValidationError("duplicate node '" + name + "'");
  ObjectNode n{name, std::move(states)};
  nodes_.emplace(std::move(name), std::move(n));
}

void SceneGraph::add_edge(std::string relation, std::string src, std::string dst) {
  if (!is_identifier(relation)) throw ValidationError("invalid relation '" + relation + "'");
  if (!has_node(src)) throw ValidationError("edge source '" + src + "' is not a node");
  if (!has_node(dst)) throw ValidationError("edge target '" + dst + "' is not a node");
  SpatialEdge e{std::move(relation), std::move(src), std::move(dst)};
  if (!edges_.insert(e).second) {
    throw ValidationError("duplicate edge " + e.relation + "(" + e.src + "," + e.dst + ")");
  }
}

bool SceneGraph::remove_edge(const SpatialEdge& e) { return edges_.erase(e) > 0; }

bool SceneGraph::add_state(const std::string& node, StateAttribute s) {
  auto it = nodes_.find(node);
  if (it == nodes_.end()) throw ValidationError("state on unknown node '" + node + "'");
  return it->second.states.insert(std::move(s)).second;
}

bool SceneGraph::remove_state(const std::string& node, const StateAttribute& s) {
  auto it = nodes_.find(node);
  if (it == nodes_.end()) return false;
  return it->second.states.erase(s) > 0;
}

void SceneGraph::replace_edge(const SpatialEdge& from, SpatialEdge to) {
  if (!has_edge(from)) throw ValidationError("replace_edge: edge not present");
  edges_.erase(from);
  try {
    add_edge(to.relation, to.src, to.dst);
  } catch (...) {
    edges_.insert(from);
    throw;
  }
}

bool SceneGraph::has_node(std::string_view name) const { return nodes_.find(name) != nodes_.end(); }

const ObjectNode& SceneGraph::node(std::string_view name) const {
  auto it = nodes_.find(name);
  if (it == nodes_.end()) throw ValidationError("unknown node '" + std::string(name) + "'");
  return it->second;
}

Proposition Action::as_proposition(std::optional<std::uint64_t> ordinal) const {
  return Proposition::fact(name, args, ordinal);
}

std::string Action::to_string() const { return serialize_proposition(as_proposition()); }

std::string_view to_string(FailureType t) {
  switch (t) {
    case FailureType::UnexpectedDynamics: return "unexpected_dynamics";
    case FailureType::FailedExecution: return "failed_execution";
    case FailureType::WrongOrder: return "wrong_order";
    case FailureType::MissingAction: return "missing_action";
  }
  throw std::logic_error("unknown FailureType");
}

FailureType failure_type_from_string(std::string_view s) {
  for (FailureType t : kAllFailureTypes) {
    if (to_string(t) == s) return t;
  }
  throw ValidationError("unknown failure type '" + std::string(s) + "'");
}

void Episode::validate() const {
  if (plan.steps.empty()) throw ValidationError("episode plan has no steps");
  if (observations.empty()) throw ValidationError("episode has no observations");
  if (observations.size() > plan.steps.size()) {
    throw ValidationError("episode has more observations (" + std::to_string(observations.size()) +
                          ") than plan steps (" + std::to_string(plan.steps.size()) + ")");
  }
  if (failure_step >= observations.size()) {
    throw ValidationError("failure_step " + std::to_string(failure_step) +
                          " does not index an observation");
  }
}

SceneGraph filter_scene_graph(const SceneGraph& graph, const Plan& plan, std::size_t step) {
  if (step >= plan.steps.size()) {
    throw ValidationError("filter_scene_graph: step " + std::to_string(step) + " out of range");
  }
  const auto& args = plan.steps[step].args;
  std::set<std::string> anchors;
  for (const auto& a : args) {
    if (graph.has_node(a)) anchors.insert(a);
  }
  std::set<std::string> keep = anchors;
  for (const auto& e : graph.edges()) {
    if (anchors.count(e.src)) keep.insert(e.dst);
    if (anchors.count(e.dst)) keep.insert(e.src);
  }
  SceneGraph out;
  for (const auto& name : keep) out.add_node(name, graph.node(name).states);
  for (const auto& e : graph.edges()) {
    if (keep.count(e.src) && keep.count(e.dst)) out.add_edge(e.relation, e.src, e.dst);
  }
  return out;
}

Plan plan_prefix(const Plan& plan, std::size_t step) {
  if (step >= plan.steps.size()) {
    throw ValidationError("plan_prefix: step " + std::to_string(step) + " out of range");
  }
  Plan out;
  out.task = plan.task;
  out.steps.assign(plan.steps.begin(), plan.steps.begin() + static_cast<std::ptrdiff_t>(step) + 1);
  return out;
}

std::vector<std::size_t> key_frames(const std::vector<SceneGraph>& observations) {
  std::vector<std::size_t> frames;
  if (observations.empty()) return frames;
  frames.push_back(0);
  for (std::size_t i = 1; i < observations.size(); ++i) {
    if (!(observations[i] == observations[i - 1])) frames.push_back(i);
  }
  return frames;
}

PropositionSet scene_graph_to_propositions(const SceneGraph& graph) {
  std::vector<Proposition> props;
  for (const auto& e : graph.edges()) props.push_back(Proposition::fact(e.relation, {e.src, e.dst}));
  for (const auto& [name, node] : graph.nodes()) {
    for (const auto& [attr, value] : node.states) {
      props.push_back(Proposition::fact(attr, {name, value}));
    }
  }
  return PropositionSet::unordered(std::move(props));
}

PropositionSet plan_prefix_to_propositions(const Plan& plan) {
  std::vector<Proposition> props;
  props.reserve(plan.steps.size());
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    props.push_back(plan.steps[k].as_proposition(k));
  }
  return PropositionSet::sequence(std::move(props));
}

}  // namespace cohere
