#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace translucent::cli {

/// Exit codes: 0 holds / passes, 1 fails / does not hold, 2 invalid input.
struct CommandResult {
  int exit_code = 0;
  std::string report;
  std::optional<nlohmann::json> payload;
  bool json_requested = false;
  std::string errors;

  /// What goes to stdout: the JSON payload under --json, the report otherwise.
  std::string output() const;
};

/// argv excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace translucent::cli
