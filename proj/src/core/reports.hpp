#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace stokeskit {

struct Report {
  nlohmann::json json;
  std::string csv;
  bool certified = true;
};

// Subcommand names accepted by run_report, in a fixed order.
const std::vector<std::string>& report_commands();

// Default configuration of a subcommand; every key a caller may set appears here.
nlohmann::json default_config(const std::string& command);

// Overlays config on the defaults (unknown keys are rejected), runs the
// subcommand and returns {"schema": 1, "command", "config", "result", "checks"}.
Report run_report(const std::string& command, const nlohmann::json& config);

}  // namespace stokeskit
