#include "cohere/json_io.h"

#include <fstream>

#include "cohere/error.h"

namespace cohere {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ValidationError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::string string_of(const json& j, const char* what) {
  if (!j.is_string()) throw ValidationError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

json to_json(const SceneGraph& graph) {
  json nodes = json::array();
  for (const auto& [name, node] : graph.nodes()) {
    json states = json::array();
    for (const auto& [attr, value] : node.states) states.push_back({attr, value});
    nodes.push_back({{"name", name}, {"states", states}});
  }
  json edges = json::array();
  for (const auto& e : graph.edges()) edges.push_back({e.relation, e.src, e.dst});
  return {{"nodes", nodes}, {"edges", edges}};
}

SceneGraph scene_graph_from_json(const json& j) {
  SceneGraph g;
  for (const auto& n : field(j, "nodes")) {
    std::set<StateAttribute> states;
    if (n.contains("states")) {
      for (const auto& s : n.at("states")) {
        if (!s.is_array() || s.size() != 2) {
          throw ValidationError("node state must be an [attribute, value] pair");
        }
        states.emplace(string_of(s[0], "state attribute"), string_of(s[1], "state value"));
      }
    }
    g.add_node(string_of(field(n, "name"), "node name"), std::move(states));
  }
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 3) {
      throw ValidationError("edge must be a [relation, src, dst] triple");
    }
    g.add_edge(string_of(e[0], "relation"), string_of(e[1], "edge source"),
               string_of(e[2], "edge target"));
  }
  return g;
}

json to_json(const Action& action) { return {{"name", action.name}, {"args", action.args}}; }

Action action_from_json(const json& j) {
  Action a;
  a.name = string_of(field(j, "name"), "action name");
  if (!is_identifier(a.name)) throw ValidationError("invalid action name '" + a.name + "'");
  for (const auto& arg : field(j, "args")) a.args.push_back(string_of(arg, "action argument"));
  a.as_proposition();  // validates argument spelling
  return a;
}

json to_json(const Episode& episode) {
  json plan = json::array();
  for (const auto& s : episode.plan.steps) plan.push_back(to_json(s));
  json obs = json::array();
  for (const auto& o : episode.observations) obs.push_back(to_json(o));
  return {{"task", episode.plan.task},
          {"plan", plan},
          {"observations", obs},
          {"failure_step", episode.failure_step},
          {"failure_type", std::string(to_string(episode.failure_type))}};
}

Episode episode_from_json(const json& j) {
  Episode e;
  e.plan.task = string_of(field(j, "task"), "task");
  for (const auto& s : field(j, "plan")) e.plan.steps.push_back(action_from_json(s));
  for (const auto& o : field(j, "observations")) e.observations.push_back(scene_graph_from_json(o));
  const json& fs = field(j, "failure_step");
  if (!fs.is_number_unsigned()) throw ValidationError("failure_step must be a non-negative integer");
  e.failure_step = fs.get<std::size_t>();
  e.failure_type = failure_type_from_string(string_of(field(j, "failure_type"), "failure_type"));
  e.validate();
  return e;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw ValidationError(path.string() + ": " + ex.what());
  }
}

Episode load_episode(const std::filesystem::path& path) {
  json j = read_json_file(path);
  try {
    return episode_from_json(j);
  } catch (const json::exception& ex) {
    throw ValidationError(path.string() + ": " + ex.what());
  } catch (const ValidationError& ex) {
    throw ValidationError(path.string() + ": " + ex.what());
  }
}

void save_episode(const std::filesystem::path& path, const Episode& episode) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(episode).dump(2) << '\n';
}

}  // namespace cohere
