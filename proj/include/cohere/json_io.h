#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cohere/world.h"

namespace cohere {

// Episode file layout:
//   {"task": ..., "plan": [{"name", "args"}],
//    "observations": [{"nodes": [{"name", "states": [[attr, value]]}],
//                      "edges": [[relation, src, dst]]}],
//    "failure_step": i, "failure_type": ...}

nlohmann::json to_json(const SceneGraph& graph);
SceneGraph scene_graph_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Action& action);
Action action_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Episode& episode);
Episode episode_from_json(const nlohmann::json& j);

/// Throws IoError when unreadable, ValidationError on schema problems.
Episode load_episode(const std::filesystem::path& path);
void save_episode(const std::filesystem::path& path, const Episode& episode);

/// Reads a whole JSON document; wraps parser failures as ValidationError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace cohere
