#pragma once

// The command surface behind the singclass executable.  Every command yields
// an exit code (0 success, 1 mathematical negative, 2 usage or computational
// failure), a JSON report following schema/report.schema.json and a plain
// text rendering.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "singclass/parametrization.hpp"

namespace singclass {

struct CliOptions {
  std::uint32_t characteristic = 0;
  int ext_degree = 1;
  std::optional<int> trunc;  // default: max(64, written degree + 1)
  std::uint64_t seed = 1;
  std::uint64_t max_orbit_nodes = 200000;
  std::string param;
  std::string param2;
  bool timings = false;
  // verify-tables
  std::vector<std::uint32_t> chars{0, 2, 3, 5, 7, 11, 13};
  int k_max = 6;
  int q_max = 6;
  unsigned threads = 0;
  int orbit_samples = 1;
};

struct CommandResult {
  int exit_code = 0;
  nlohmann::ordered_json report;
  std::string text;
};

const std::vector<std::string>& command_names();

CommandResult run_command(const std::string& command, const CliOptions& opt);

/// SHA-256 (hex) of a transcript's canonical text.
std::string transcript_digest(const Transcript& tr);

}  // namespace singclass
