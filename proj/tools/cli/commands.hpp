#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fracperim::cli {

enum ExitCode { ok = 0, criteria_failed = 1, bad_input = 2, not_converged = 3, low_confidence = 4 };

const std::vector<std::string>& command_names();

// Executes a command from its fully resolved configuration. Artifacts go to config["out"] (stdout when empty),
// each file with a JSON sidecar holding the configuration, seed and library version.
int run_command(const std::string& command, const nlohmann::json& config);

}  // namespace fracperim::cli
