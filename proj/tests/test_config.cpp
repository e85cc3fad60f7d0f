#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "semifore/config.hpp"
#include "semifore/errors.hpp"

using namespace semifore;
using namespace semifore::config;

namespace {

const char* kFullConfig = R"({
  "data": "data.csv",
  "baseline": "wsts/baseline.csv",
  "merge_rules": "merges.csv",
  "hierarchy": "/abs/hierarchy.csv",
  "models": ["SES", "KNN"],
  "h": [3, 2],
  "mode": "monthly",
  "test_start": "2018-01",
  "thresholds": {"short_max": 100, "medium_max": 200},
  "seed": 42,
  "workers": 3,
  "out_dir": "results",
  "grids": {"knn_k": [1, 3], "num_trees": 25}
})";

void expect_invalid(const std::string& text) {
  CHECK_THROWS_AS(parse_config(text, ""), ValidationError);
}

}  // namespace

TEST_CASE("full config parses with resolved paths") {
  const RunConfig c = parse_config(kFullConfig, "/cfg");
  CHECK(c.data_path == "/cfg/data.csv");
  CHECK(c.baseline_path == "/cfg/wsts/baseline.csv");
  CHECK(c.merge_rules_path == "/cfg/merges.csv");
  CHECK(c.hierarchy_path == "/abs/hierarchy.csv");  // absolute stays put
  CHECK(c.out_dir == "/cfg/results");
  CHECK(c.models == std::vector<std::string>{"SES", "KNN"});
  CHECK(c.horizons == std::vector<int>{3, 2});
  CHECK(c.mode == engine::OriginMode::kMonthly);
  CHECK(c.test_start == MonthIndex::from_ym(2018, 1));
  CHECK(c.thresholds.short_max == 100);
  CHECK(c.thresholds.medium_max == 200);
  CHECK(c.seed == 42);
  CHECK(c.workers == 3);
  CHECK(c.grids.knn_k == std::vector<int>{1, 3});
  CHECK(c.grids.knn_p == std::vector<int>{1, 2, 3});  // untouched default
  CHECK(c.grids.num_trees == 25);
}

TEST_CASE("defaults fill every optional key") {
  const RunConfig c = parse_config(
      R"({"data": "d.csv", "baseline": "b.csv", "test_start": "2018-01"})",
      "");
  CHECK(c.data_path == "d.csv");
  CHECK(c.merge_rules_path.empty());
  CHECK(c.hierarchy_path.empty());
  CHECK(c.models.size() == 9);
  CHECK(c.models.front() == "SARIMA");
  CHECK(c.models.back() == "Ensemble");
  CHECK(c.horizons == std::vector<int>{2, 3});
  CHECK(c.mode == engine::OriginMode::kQuarterEvent);
  CHECK(c.thresholds.short_max == 284);
  CHECK(c.thresholds.medium_max == 359);
  CHECK(c.seed == 0);
  CHECK(c.workers == 1);
  CHECK(c.out_dir == "out");
  CHECK(c.grids.num_trees == 500);
  CHECK(c.grids.forest_mtry == std::vector<int>{2, 7, 12, 16, 23});
}

TEST_CASE("config validation rejects malformed input") {
  expect_invalid("not json at all");
  expect_invalid("[1, 2]");
  expect_invalid(R"({"baseline": "b", "test_start": "2018-01"})");  // no data
  expect_invalid(R"({"data": "d", "test_start": "2018-01"})");  // no baseline
  expect_invalid(R"({"data": "d", "baseline": "b"})");  // no test_start

  const std::string base =
      R"("data": "d.csv", "baseline": "b.csv", "test_start": "2018-01")";
  auto with = [&](const std::string& extra) {
    return "{" + base + ", " + extra + "}";
  };
  expect_invalid(with(R"("typo_key": 1)"));
  expect_invalid(with(R"("h": [4])"));
  expect_invalid(with(R"("h": [])"));
  expect_invalid(with(R"("h": [2, 2])"));
  expect_invalid(with(R"("h": "2,3")"));
  expect_invalid(with(R"("models": [])"));
  expect_invalid(with(R"("models": ["Holt"])"));
  expect_invalid(with(R"("models": ["SES", "SES"])"));
  expect_invalid(with(R"("mode": "weekly")"));
  expect_invalid(with(R"("seed": -1)"));
  expect_invalid(with(R"("seed": "42")"));
  expect_invalid(with(R"("workers": 0)"));
  expect_invalid(with(R"("thresholds": {"short_max": 200, "medium_max": 100})"));
  expect_invalid(with(R"("thresholds": {"shortest": 1})"));
  expect_invalid(with(R"("grids": {"knn_k": []})"));
  expect_invalid(with(R"("grids": {"svr_cost": [0.5, 0]})"));
  expect_invalid(with(R"("grids": {"num_trees": 0})"));
  expect_invalid(with(R"("grids": {"depth": 3})"));
  CHECK_NOTHROW(parse_config(with(R"("h": [2])"), ""));
  expect_invalid(with(R"("test_start": "201801")"));
}

TEST_CASE("config echo reparses to the same run") {
  const RunConfig c = parse_config(kFullConfig, "/cfg");
  const RunConfig back = parse_config(config_to_json(c), "");
  CHECK(back.data_path == c.data_path);
  CHECK(back.baseline_path == c.baseline_path);
  CHECK(back.merge_rules_path == c.merge_rules_path);
  CHECK(back.hierarchy_path == c.hierarchy_path);
  CHECK(back.models == c.models);
  CHECK(back.horizons == c.horizons);
  CHECK(back.mode == c.mode);
  CHECK(back.test_start == c.test_start);
  CHECK(back.seed == c.seed);
  CHECK(back.workers == c.workers);
  CHECK(back.out_dir == c.out_dir);
  CHECK(back.grids.knn_k == c.grids.knn_k);
  CHECK(back.grids.svr_sigma == c.grids.svr_sigma);
  CHECK(back.grids.num_trees == c.grids.num_trees);
}

TEST_CASE("load_config reads from disk relative to the file") {
  const std::string dir = "/tmp/semifore_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/config.json");
    out << R"({"data": "d.csv", "baseline": "b.csv",
               "test_start": "2019-06"})";
  }
  const RunConfig c = load_config(dir + "/config.json");
  CHECK(c.data_path == dir + "/d.csv");
  CHECK(c.baseline_path == dir + "/b.csv");
  CHECK(c.test_start == MonthIndex::from_ym(2019, 6));
  CHECK_THROWS_AS(load_config(dir + "/missing.json"), ValidationError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run settings mirror the config") {
  const RunConfig c = parse_config(kFullConfig, "/cfg");
  const engine::RunSettings s = to_run_settings(c);
  CHECK(s.mode == c.mode);
  CHECK(s.test_start == c.test_start);
  CHECK(s.horizons == c.horizons);
  CHECK(s.models == c.models);
  CHECK(s.seed == c.seed);
  CHECK(s.workers == c.workers);
  CHECK(s.grids.num_trees == 25);
}
