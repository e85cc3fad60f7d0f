#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semifore/calendar.hpp"
#include "semifore/engine.hpp"
#include "semifore/series.hpp"

namespace semifore::config {

// One run's full declaration, as read from a JSON config file. Paths are
// stored already resolved against the config file's own directory, so a
// config moves with its data. Optional inputs are empty strings.
struct RunConfig {
  std::string data_path;
  std::string baseline_path;
  std::string merge_rules_path;
  std::string hierarchy_path;
  std::vector<std::string> models;
  std::vector<int> horizons;
  engine::OriginMode mode = engine::OriginMode::kQuarterEvent;
  MonthIndex test_start;
  LengthThresholds thresholds;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir = "out";
  engine::GridSettings grids;
};

const char* mode_name(engine::OriginMode mode);
bool parse_mode(const std::string& name, engine::OriginMode* out);

// Parses and validates config text. Rejects unknown keys, malformed
// values, horizons outside {2, 3}, unknown model ids, and degenerate
// grids; does not touch the filesystem beyond path resolution.
RunConfig parse_config(const std::string& text, const std::string& base_dir);

RunConfig load_config(const std::string& path);

// Canonical JSON echo of an effective config, for run manifests.
std::string config_to_json(const RunConfig& c);

engine::RunSettings to_run_settings(const RunConfig& c);

}  // namespace semifore::config
