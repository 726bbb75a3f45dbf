#include "cohere/domain.h"

#include <set>

#include "cohere/entailment.h"
#include "cohere/error.h"
#include "cohere/json_io.h"

namespace cohere {

using nlohmann::json;

std::string_view to_string(TaskGroup g) {
  switch (g) {
    case TaskGroup::Counterfactual: return "counterfactual";
    case TaskGroup::Heldout: return "heldout";
    case TaskGroup::Extra: return "extra";
  }
  return "?";
}

Action ActionSchema::ground(const std::vector<std::string>& args) const {
  if (args.size() != params.size()) {
    throw ValidationError("action " + name + " expects " + std::to_string(params.size()) +
                          " arguments, got " + std::to_string(args.size()));
  }
  Bindings b;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Term t = Term::parse(args[i]);
    if (t.is_variable()) throw ValidationError("variable argument '" + args[i] + "' in plan step");
    b.emplace(params[i], std::move(t));
  }
  auto ground_all = [&b](const std::vector<Proposition>& pats) {
    std::vector<Proposition> out;
    out.reserve(pats.size());
    for (const auto& p : pats) out.push_back(substitute(p, b));
    return PropositionSet::unordered(std::move(out));
  };
  Action a;
  a.name = name;
  a.args = args;
  a.preconditions = ground_all(preconditions);
  a.effects = ground_all(effects);
  return a;
}

namespace {

const json& need(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ValidationError(std::string("domain: missing field '") + name + "'");
  }
  return j.at(name);
}

std::vector<Proposition> lifted_list(const json& arr, const std::set<std::string>& params,
                                     const std::string& schema) {
  std::vector<Proposition> out;
  for (const auto& s : arr) {
    Proposition p = parse_proposition(s.get<std::string>(), VariablePolicy::Allow);
    if (p.ordinal) throw ValidationError("schema " + schema + ": conditions carry no ordinal");
    for (const auto& t : p.args) {
      if (t.is_variable() && !params.count(t.text())) {
        throw ValidationError("schema " + schema + ": variable " + t.text() +
                              " is not a parameter");
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

TaskGroup group_from_string(const std::string& s) {
  for (TaskGroup g : {TaskGroup::Counterfactual, TaskGroup::Heldout, TaskGroup::Extra}) {
    if (to_string(g) == s) return g;
  }
  throw ValidationError("unknown task group '" + s + "'");
}

}  // namespace

DomainSpec DomainSpec::from_json(const json& j, const std::filesystem::path& base_dir) {
  DomainSpec d;
  try {
    for (const auto& p : need(j, "predicates")) {
      PredicateSpec spec;
      spec.name = need(p, "name").get<std::string>();
      spec.arity = need(p, "arity").get<std::size_t>();
      std::string kind = p.value("kind", "relation");
      if (kind == "relation") {
        spec.kind = PredicateKind::Relation;
      } else if (kind == "state") {
        spec.kind = PredicateKind::State;
      } else {
        throw ValidationError("predicate " + spec.name + ": unknown kind '" + kind + "'");
      }
      if (spec.arity != 2) {
        throw ValidationError("predicate " + spec.name + ": scene predicates are binary");
      }
      d.predicates_.emplace(spec.name, spec);
    }
    for (const auto& o : need(j, "objects")) {
      ObjectSpec spec{need(o, "name").get<std::string>(), o.value("kind", "item")};
      if (!is_identifier(spec.name)) throw ValidationError("invalid object '" + spec.name + "'");
      d.objects_.push_back(std::move(spec));
    }
    for (const auto& s : need(j, "schemas")) {
      ActionSchema schema;
      schema.name = need(s, "name").get<std::string>();
      if (!is_identifier(schema.name)) throw ValidationError("invalid schema '" + schema.name + "'");
      std::set<std::string> params;
      for (const auto& p : need(s, "params")) {
        std::string v = p.get<std::string>();
        if (!is_variable_name(v)) throw ValidationError("schema parameter '" + v + "'");
        schema.params.push_back(v);
        params.insert(v);
      }
      schema.preconditions = lifted_list(need(s, "preconditions"), params, schema.name);
      schema.effects = lifted_list(need(s, "effects"), params, schema.name);
      std::string name = schema.name;
      d.schemas_.emplace(std::move(name), std::move(schema));
    }
    for (const auto& [task, g] : need(j, "initial_graphs").items()) {
      d.initial_graphs_.emplace(task, scene_graph_from_json(g));
    }
    for (const auto& [name, t] : need(j, "tasks").items()) {
      TaskSpec spec;
      spec.name = name;
      spec.plan.task = name;
      for (const auto& step : need(t, "plan")) {
        Action a = action_from_json(step);
        spec.plan.steps.push_back(d.schema(a.name).ground(a.args));
      }
      spec.group = group_from_string(t.value("group", "counterfactual"));
      if (t.contains("explanations")) {
        spec.explanations = t.at("explanations").get<std::vector<std::string>>();
      }
      d.tasks_.emplace(name, std::move(spec));
    }
    if (j.contains("lexicon")) {
      d.lexicon_path_ = base_dir / j.at("lexicon").get<std::string>();
    }
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("domain: ") + ex.what());
  } catch (const ParseError& ex) {
    throw ValidationError(std::string("domain: ") + ex.what());
  }
  d.validate();
  return d;
}

DomainSpec DomainSpec::load(const std::filesystem::path& path) {
  json j = read_json_file(path);
  try {
    return from_json(j, path.parent_path());
  } catch (const ValidationError& ex) {
    throw ValidationError(path.string() + ": " + ex.what());
  }
}

const TaskSpec& DomainSpec::task(const std::string& name) const {
  auto it = tasks_.find(name);
  if (it == tasks_.end()) throw ValidationError("unknown task '" + name + "'");
  return it->second;
}

const ActionSchema& DomainSpec::schema(const std::string& name) const {
  auto it = schemas_.find(name);
  if (it == schemas_.end()) throw ValidationError("unknown action schema '" + name + "'");
  return it->second;
}

const SceneGraph& DomainSpec::initial_graph(const std::string& task) const {
  auto it = initial_graphs_.find(task);
  if (it == initial_graphs_.end()) throw ValidationError("no initial graph for task '" + task + "'");
  return it->second;
}

std::vector<std::string> DomainSpec::relations_with_arity(std::size_t arity) const {
  std::vector<std::string> out;
  for (const auto& [name, p] : predicates_) {
    if (p.kind == PredicateKind::Relation && p.arity == arity) out.push_back(name);
  }
  return out;
}

PredicateKind DomainSpec::kind_of(const std::string& predicate) const {
  auto it = predicates_.find(predicate);
  if (it == predicates_.end()) throw ValidationError("undeclared predicate '" + predicate + "'");
  return it->second.kind;
}

std::vector<std::string> DomainSpec::tasks_in(TaskGroup group) const {
  std::vector<std::string> out;
  for (const auto& [name, t] : tasks_) {
    if (t.group == group) out.push_back(name);
  }
  return out;
}

Plan DomainSpec::ground(const Plan& plan) const {
  Plan out;
  out.task = plan.task;
  for (const auto& s : plan.steps) out.steps.push_back(schema(s.name).ground(s.args));
  return out;
}

bool DomainSpec::holds(const Proposition& c, const SceneGraph& graph) const {
  if (c.args.size() != 2) throw ValidationError("condition must be binary: " + serialize_proposition(c));
  const std::string& a = c.args[0].text();
  const std::string& b = c.args[1].text();
  bool present = false;
  if (kind_of(c.predicate) == PredicateKind::Relation) {
    present = graph.has_edge({c.predicate, a, b});
  } else if (graph.has_node(a)) {
    present = graph.node(a).states.count({c.predicate, b}) > 0;
  }
  return present == c.polarity;
}

void DomainSpec::apply(const Action& action, SceneGraph& graph) const {
  for (int pass = 0; pass < 2; ++pass) {
    const bool adding = pass == 1;
    for (const auto& e : action.effects) {
      if (e.polarity != adding) continue;
      const std::string& a = e.args.at(0).text();
      const std::string& b = e.args.at(1).text();
      if (kind_of(e.predicate) == PredicateKind::Relation) {
        SpatialEdge edge{e.predicate, a, b};
        if (!adding) {
          graph.remove_edge(edge);
        } else if (!graph.has_edge(edge)) {
          graph.add_edge(edge.relation, edge.src, edge.dst);
        }
      } else if (adding) {
        graph.add_state(a, {e.predicate, b});
      } else {
        graph.remove_state(a, {e.predicate, b});
      }
    }
  }
}

ReplayResult DomainSpec::replay(const Plan& plan, const SceneGraph& initial) const {
  ReplayResult r;
  SceneGraph g = initial;
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    const Action& step = plan.steps[k];
    const Action grounded = step.preconditions.empty() && step.effects.empty()
                                ? schema(step.name).ground(step.args)
                                : step;
    std::optional<Proposition> unmet;
    for (const auto& pre : grounded.preconditions) {
      if (!holds(pre, g)) {
        unmet = pre;
        break;
      }
    }
    if (unmet) {
      if (!r.first_violation) {
        r.first_violation = k;
        r.violated_precondition = unmet;
      }
    } else {
      apply(grounded, g);
    }
    r.observations.push_back(g);
  }
  return r;
}

void DomainSpec::validate() const {
  for (const auto& [name, t] : tasks_) {
    if (t.plan.steps.empty()) throw ValidationError("task " + name + " has an empty plan");
    for (const auto& step : t.plan.steps) {
      for (const auto& p : step.preconditions) kind_of(p.predicate);
      for (const auto& p : step.effects) kind_of(p.predicate);
    }
    ReplayResult r = replay(t.plan, initial_graph(name));
    if (!r.executable()) {
      throw ValidationError("canonical plan of " + name + " is not executable: step " +
                            std::to_string(*r.first_violation) + " needs " +
                            serialize_proposition(*r.violated_precondition));
    }
  }
}

}  // namespace cohere
