#include "semifore/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "semifore/errors.hpp"

namespace semifore::config {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) {
  throw ValidationError("config: " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      fail("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

std::string need_string(const json& obj, const std::string& key) {
  if (!obj.contains(key)) fail("missing required key \"" + key + "\"");
  if (!obj.at(key).is_string()) fail("\"" + key + "\" must be a string");
  return obj.at(key).get<std::string>();
}

std::string opt_string(const json& obj, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) fail("\"" + key + "\" must be a string");
  return obj.at(key).get<std::string>();
}

int opt_int(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer()) {
    fail("\"" + key + "\" must be an integer");
  }
  return obj.at(key).get<int>();
}

std::vector<int> int_array(const json& value, const std::string& key) {
  if (!value.is_array()) fail("\"" + key + "\" must be an array");
  std::vector<int> out;
  for (const auto& v : value) {
    if (!v.is_number_integer()) {
      fail("\"" + key + "\" must hold only integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<double> number_array(const json& value, const std::string& key) {
  if (!value.is_array()) fail("\"" + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) fail("\"" + key + "\" must hold only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

void read_grids(const json& obj, engine::GridSettings* grids) {
  reject_unknown_keys(obj,
                      {"knn_k", "knn_p", "svr_sigma", "svr_cost",
                       "forest_mtry", "forest_min_node", "num_trees"},
                      "\"grids\"");
  if (obj.contains("knn_k")) grids->knn_k = int_array(obj["knn_k"], "knn_k");
  if (obj.contains("knn_p")) grids->knn_p = int_array(obj["knn_p"], "knn_p");
  if (obj.contains("svr_sigma")) {
    grids->svr_sigma = number_array(obj["svr_sigma"], "svr_sigma");
  }
  if (obj.contains("svr_cost")) {
    grids->svr_cost = number_array(obj["svr_cost"], "svr_cost");
  }
  if (obj.contains("forest_mtry")) {
    grids->forest_mtry = int_array(obj["forest_mtry"], "forest_mtry");
  }
  if (obj.contains("forest_min_node")) {
    grids->forest_min_node = int_array(obj["forest_min_node"],
                                       "forest_min_node");
  }
  grids->num_trees = opt_int(obj, "num_trees", grids->num_trees);
}

}  // namespace

const char* mode_name(engine::OriginMode mode) {
  return mode == engine::OriginMode::kMonthly ? "monthly" : "quarter-event";
}

bool parse_mode(const std::string& name, engine::OriginMode* out) {
  if (name == "monthly") {
    *out = engine::OriginMode::kMonthly;
    return true;
  }
  if (name == "quarter-event") {
    *out = engine::OriginMode::kQuarterEvent;
    return true;
  }
  return false;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  reject_unknown_keys(j,
                      {"data", "baseline", "merge_rules", "hierarchy",
                       "models", "h", "mode", "test_start", "thresholds",
                       "seed", "workers", "out_dir", "grids"},
                      "the top level");

  RunConfig c;
  c.data_path = resolve(base_dir, need_string(j, "data"));
  c.baseline_path = resolve(base_dir, need_string(j, "baseline"));
  c.merge_rules_path = resolve(base_dir, opt_string(j, "merge_rules", ""));
  c.hierarchy_path = resolve(base_dir, opt_string(j, "hierarchy", ""));
  c.out_dir = resolve(base_dir, opt_string(j, "out_dir", "out"));

  c.test_start = MonthIndex::parse_label(need_string(j, "test_start"));

  if (j.contains("models")) {
    if (!j["models"].is_array()) fail("\"models\" must be an array");
    c.models.clear();
    for (const auto& m : j["models"]) {
      if (!m.is_string()) fail("\"models\" must hold only strings");
      c.models.push_back(m.get<std::string>());
    }
  } else {
    for (engine::ModelFamily f : engine::kAllFamilies) {
      c.models.push_back(engine::family_id(f));
    }
    c.models.push_back(engine::kEnsembleId);
  }
  if (c.models.empty()) fail("\"models\" must not be empty");
  std::set<std::string> seen;
  for (const auto& m : c.models) {
    engine::ModelFamily f;
    if (m != engine::kEnsembleId && !engine::parse_family(m, &f)) {
      fail("unknown model id \"" + m + "\"");
    }
    if (!seen.insert(m).second) fail("duplicate model id \"" + m + "\"");
  }

  c.horizons = j.contains("h") ? int_array(j["h"], "h")
                               : std::vector<int>{2, 3};
  if (c.horizons.empty()) fail("\"h\" must not be empty");
  std::set<int> seen_h;
  for (int h : c.horizons) {
    if (h != 2 && h != 3) fail("\"h\" entries must lie in {2, 3}");
    if (!seen_h.insert(h).second) fail("duplicate horizon in \"h\"");
  }

  const std::string mode = opt_string(j, "mode", "quarter-event");
  if (!parse_mode(mode, &c.mode)) {
    fail("\"mode\" must be \"monthly\" or \"quarter-event\"");
  }

  if (j.contains("thresholds")) {
    const auto& t = j["thresholds"];
    if (!t.is_object()) fail("\"thresholds\" must be an object");
    reject_unknown_keys(t, {"short_max", "medium_max"}, "\"thresholds\"");
    c.thresholds.short_max = opt_int(t, "short_max", c.thresholds.short_max);
    c.thresholds.medium_max =
        opt_int(t, "medium_max", c.thresholds.medium_max);
    if (c.thresholds.short_max < 1 ||
        c.thresholds.medium_max <= c.thresholds.short_max) {
      fail("thresholds must satisfy 0 < short_max < medium_max");
    }
  }

  if (j.contains("seed")) {
    const auto& sd = j["seed"];
    if (!sd.is_number_integer() ||
        (!sd.is_number_unsigned() && sd.get<std::int64_t>() < 0)) {
      fail("\"seed\" must be a nonnegative integer");
    }
    c.seed = sd.get<std::uint64_t>();
  }

  c.workers = opt_int(j, "workers", 1);
  if (c.workers < 1) fail("\"workers\" must be at least 1");

  if (j.contains("grids")) {
    if (!j["grids"].is_object()) fail("\"grids\" must be an object");
    read_grids(j["grids"], &c.grids);
  }
  engine::check_grids(c.grids);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(),
                      std::filesystem::path(path).parent_path().string());
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["data"] = c.data_path;
  j["baseline"] = c.baseline_path;
  if (!c.merge_rules_path.empty()) j["merge_rules"] = c.merge_rules_path;
  if (!c.hierarchy_path.empty()) j["hierarchy"] = c.hierarchy_path;
  j["models"] = c.models;
  j["h"] = c.horizons;
  j["mode"] = mode_name(c.mode);
  j["test_start"] = c.test_start.label();
  j["thresholds"] = {{"short_max", c.thresholds.short_max},
                     {"medium_max", c.thresholds.medium_max}};
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["out_dir"] = c.out_dir;
  j["grids"] = {{"knn_k", c.grids.knn_k},
                {"knn_p", c.grids.knn_p},
                {"svr_sigma", c.grids.svr_sigma},
                {"svr_cost", c.grids.svr_cost},
                {"forest_mtry", c.grids.forest_mtry},
                {"forest_min_node", c.grids.forest_min_node},
                {"num_trees", c.grids.num_trees}};
  return j.dump(2) + "\n";
}

engine::RunSettings to_run_settings(const RunConfig& c) {
  engine::RunSettings s;
  s.mode = c.mode;
  s.test_start = c.test_start;
  s.horizons = c.horizons;
  s.models = c.models;
  s.seed = c.seed;
  s.workers = c.workers;
  s.grids = c.grids;
  return s;
}

}  // namespace semifore::config
