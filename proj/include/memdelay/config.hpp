#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memdelay/scenario.hpp"

namespace memdelay {

/// Sweep axes over the schedule: every (bound, on_length) pair replaces the
/// corresponding fields of each listed cycle.
struct SweepSpec {
  std::vector<double> bounds;
  std::vector<double> on_lengths;
};

struct LoadedScenario {
  Scenario scenario;
  std::optional<SweepSpec> sweep;
};

/// Parses the sectioned key-value scenario format (sections: operator,
/// kernel, schedule, initial, solver, optional sweep). Throws Error on
/// malformed input or failed model validation.
LoadedScenario parse_scenario(const std::string& text);

LoadedScenario load_scenario_file(const std::string& path);

/// FNV-1a hash of the raw file bytes, as a hex string (summary.json field).
std::string content_hash(const std::string& text);

inline constexpr int kSchemaVersion = 1;

}  // namespace memdelay
