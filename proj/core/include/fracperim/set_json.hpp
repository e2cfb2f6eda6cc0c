#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fracperim/set_spec.hpp"

namespace fracperim {

// Set trees as nested objects: combinators {"op": ..., "args": [...]}, leaves {"type": ...}.
nlohmann::json to_json(const SetSpec& set);
SetSpec set_from_json(const nlohmann::json& j);

SetSpec load_set_file(const std::string& path);

}  // namespace fracperim
