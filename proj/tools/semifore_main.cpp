// semifore command line: validate / run / report / synth / calendar.
// Exit codes are a contract: 0 success, 1 validation failure, 2 runtime
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semifore/baseline.hpp"
#include "semifore/calendar.hpp"
#include "semifore/config.hpp"
#include "semifore/csv.hpp"
#include "semifore/engine.hpp"
#include "semifore/errors.hpp"
#include "semifore/log.hpp"
#include "semifore/records.hpp"
#include "semifore/report.hpp"
#include "semifore/series.hpp"
#include "semifore/synth.hpp"

namespace {

using namespace semifore;
using nlohmann::ordered_json;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::optional<std::string> h_list;
  std::optional<std::string> mode;
};

std::vector<int> parse_h_list(const std::string& text) {
  std::vector<int> hs;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token == "2") {
      hs.push_back(2);
    } else if (token == "3") {
      hs.push_back(3);
    } else {
      throw ValidationError("--h entries must lie in {2, 3}, got \"" + token +
                            "\"");
    }
  }
  if (hs.empty()) throw ValidationError("--h needs at least one horizon");
  std::set<int> seen(hs.begin(), hs.end());
  if (seen.size() != hs.size()) throw ValidationError("--h repeats a horizon");
  return hs;
}

config::RunConfig load_with_overrides(const std::string& config_path,
                                      const Overrides& ov) {
  config::RunConfig cfg = config::load_config(config_path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.workers) {
    if (*ov.workers < 1) throw ValidationError("--workers must be >= 1");
    cfg.workers = *ov.workers;
  }
  if (ov.out) cfg.out_dir = *ov.out;
  if (ov.h_list) cfg.horizons = parse_h_list(*ov.h_list);
  if (ov.mode) {
    engine::OriginMode mode;
    if (!config::parse_mode(*ov.mode, &mode)) {
      throw ValidationError("--mode must be monthly or quarter-event");
    }
    cfg.mode = mode;
  }
  return cfg;
}

struct Inputs {
  std::vector<MonthlySeries> series;
  std::vector<baseline::BaselineEvent> baseline_events;
};

Inputs load_inputs(const config::RunConfig& cfg) {
  Inputs in;
  in.series = ingest_series_file(cfg.data_path);
  if (!cfg.merge_rules_path.empty()) {
    const auto rules =
        parse_merge_rules(csv::read_file(cfg.merge_rules_path));
    in.series = apply_merges(std::move(in.series), rules);
  }
  in.baseline_events = baseline::ingest_baseline_file(cfg.baseline_path);
  return in;
}

int cmd_validate(const std::string& config_path, const Overrides& ov) {
  std::vector<std::string> violations;
  auto check = [&](const std::function<void()>& step) {
    try {
      step();
    } catch (const ValidationError& e) {
      violations.push_back(e.what());
    }
  };

  config::RunConfig cfg;
  try {
    cfg = load_with_overrides(config_path, ov);
  } catch (const ValidationError& e) {
    std::cout << "violation: " << e.what() << "\n";
    std::cout << "validation: 1 violation\n";
    return 1;
  }

  std::vector<MonthlySeries> series;
  check([&] {
    series = ingest_series_file(cfg.data_path);
    if (!cfg.merge_rules_path.empty()) {
      const auto rules =
          parse_merge_rules(csv::read_file(cfg.merge_rules_path));
      series = apply_merges(std::move(series), rules);
    }
  });

  if (!cfg.hierarchy_path.empty()) {
    check([&] {
      const auto tree = Hierarchy::from_table(csv::read_file(cfg.hierarchy_path));
      for (const auto& s : series) {
        if (!tree.contains(s.id())) {
          throw ValidationError("hierarchy: no node for series " + s.id());
        }
      }
    });
  }

  std::vector<baseline::BaselineEvent> events;
  check([&] { events = baseline::ingest_baseline_file(cfg.baseline_path); });

  // Every series must be long enough to train at the first test origin, and
  // every in-span calendar event needs its baseline value.
  for (const auto& s : series) {
    check([&] {
      if (months_inclusive(s.start(), cfg.test_start) - 1 <
          engine::kMinTrainMonths) {
        throw ValidationError("series " + s.id() + ": fewer than " +
                              std::to_string(engine::kMinTrainMonths) +
                              " months before test_start");
      }
    });
  }
  if (!events.empty() && !series.empty()) {
    std::set<std::tuple<std::string, Quarter, baseline::EventType>> have;
    for (const auto& e : events) have.insert({e.series, e.quarter, e.type});
    for (const auto& s : series) {
      if (s.end() < cfg.test_start) continue;
      check([&] {
        for (const auto& ev :
             baseline::event_calendar(cfg.test_start, s.end())) {
          const MonthIndex m1 = quarter_first_month(ev.target);
          if (m1 + 2 > s.end()) continue;  // quarter not finished in-span
          if (!have.count({s.id(), ev.target, ev.type})) {
            throw ValidationError("baseline: missing " +
                                  std::string(baseline::event_type_name(ev.type)) +
                                  " value for " + s.id() + " " +
                                  ev.target.label());
          }
        }
      });
    }
  }

  for (const auto& v : violations) std::cout << "violation: " << v << "\n";
  if (violations.empty()) {
    std::cout << "validation: clean\n";
    return 0;
  }
  std::cout << "validation: " << violations.size() << " violation"
            << (violations.size() == 1 ? "" : "s") << "\n";
  return 1;
}

ordered_json manifest_json(const config::RunConfig& cfg,
                           const engine::RunResult& result) {
  ordered_json m;
  m["config"] = ordered_json::parse(config::config_to_json(cfg));
  m["planned_tasks"] = result.planned_tasks;
  m["record_count"] = result.records.size();
  m["failures"] = ordered_json::array();
  for (const auto& f : result.failures) {
    m["failures"].push_back({{"series", f.series},
                             {"train_end", f.train_end.label()},
                             {"model", f.model},
                             {"reason", f.reason}});
  }
  m["lambdas"] = ordered_json::array();
  for (const auto& [series, train_end, lambda] : result.lambdas) {
    m["lambdas"].push_back({{"series", series},
                            {"train_end", train_end.label()},
                            {"lambda", lambda}});
  }
  // One hyperparameter entry per fitted (series, origin, model).
  m["hyperparameters"] = ordered_json::array();
  std::set<std::tuple<std::string, int, std::string>> seen;
  for (const auto& r : result.records) {
    if (!seen.insert({r.series, r.train_end.value(), r.model}).second) {
      continue;
    }
    ordered_json entry = {{"series", r.series},
                          {"train_end", r.train_end.label()},
                          {"model", r.model}};
    entry["params"] = ordered_json::parse(r.hyperparams_json, nullptr, false);
    if (entry["params"].is_discarded()) entry["params"] = r.hyperparams_json;
    m["hyperparameters"].push_back(std::move(entry));
  }
  return m;
}

int cmd_run(const std::string& config_path, const Overrides& ov) {
  const config::RunConfig cfg = load_with_overrides(config_path, ov);
  const Inputs in = load_inputs(cfg);

  const engine::RunSettings settings = config::to_run_settings(cfg);
  log_info("run: " + std::to_string(in.series.size()) + " series, seed " +
           std::to_string(cfg.seed));
  const engine::RunResult result = engine::run_forecasts(in.series, settings);

  std::filesystem::create_directories(cfg.out_dir);
  const std::string forecasts_path = cfg.out_dir + "/forecasts.csv";
  write_records_file(forecasts_path, result.records);
  const std::string manifest_path = cfg.out_dir + "/manifest.json";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) throw ValidationError("cannot write " + manifest_path);
  manifest << manifest_json(cfg, result).dump(2) << "\n";

  std::cout << "run: " << result.records.size() << " records from "
            << result.planned_tasks << " tasks, " << result.failures.size()
            << " failures -> " << forecasts_path << "\n";
  return 0;
}

int cmd_report(const std::string& config_path, const Overrides& ov) {
  const config::RunConfig cfg = load_with_overrides(config_path, ov);
  const std::string forecasts_path = cfg.out_dir + "/forecasts.csv";
  if (!std::filesystem::exists(forecasts_path)) {
    throw ValidationError("missing " + forecasts_path + " (run first)");
  }
  const auto records = read_records_file(forecasts_path);
  const Inputs in = load_inputs(cfg);

  report::ReportOptions options;
  options.horizons = cfg.horizons;
  options.test_start = cfg.test_start;
  options.models = cfg.models;
  options.thresholds = cfg.thresholds;
  const auto written = report::write_reports(cfg.out_dir, records, in.series,
                                             in.baseline_events, options);
  for (const auto& path : written) std::cout << path << "\n";
  std::cout << "report: " << written.size() << " files\n";
  return 0;
}

int cmd_synth(const std::string& out_dir, int series_count,
              std::uint64_t seed, double advantage) {
  synth::CorpusOptions options;
  options.series_count = series_count;
  options.seed = seed;
  options.advantage = advantage;
  synth::write_corpus(out_dir, options);
  std::cout << "synth: " << series_count << " series, seed " << seed
            << ", baseline advantage " << advantage << " -> " << out_dir
            << "\n";
  return 0;
}

int cmd_calendar(const std::string& from, const std::string& to) {
  const MonthIndex first = MonthIndex::parse_label(from);
  const MonthIndex last = MonthIndex::parse_label(to);
  int meetings = 0;
  int updates = 0;
  for (const auto& ev : baseline::event_calendar(first, last)) {
    if (ev.type == baseline::EventType::kMeeting) {
      ++meetings;
    } else {
      ++updates;
    }
    std::cout << ev.event_month.label() << " "
              << baseline::event_type_name(ev.type) << " -> "
              << ev.target.label() << "\n";
  }
  std::cout << "calendar: " << meetings << " Meeting, " << updates
            << " AlgorithmicUpdate\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rolling-origin forecast benchmark for monthly market data"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    sub->set_help_flag("--help", "Print help");  // frees -h for --h
    auto* opt = sub->add_option("--config", config_path, "Run config JSON");
    if (needs_config) opt->required();
    sub->add_option("--seed", ov.seed, "Master seed override");
    sub->add_option("--workers", ov.workers, "Worker thread override");
    sub->add_option("--out", ov.out, "Output directory override");
    sub->add_option("--h", ov.h_list, "Horizon list override, e.g. 2,3");
    sub->add_option("--mode", ov.mode,
                    "Origin mode override: monthly|quarter-event");
  };

  auto* validate = app.add_subcommand("validate", "Check config and inputs");
  add_common(validate, true);
  auto* run = app.add_subcommand("run", "Fit all models over all origins");
  add_common(run, true);
  auto* report =
      app.add_subcommand("report", "Render tables and charts from a run");
  add_common(report, true);

  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  std::string synth_out;
  int synth_series = 10;
  std::uint64_t synth_seed = 2026;
  double synth_advantage = 0.3;
  synth->add_option("--out", synth_out, "Corpus directory")->required();
  synth->add_option("--series", synth_series, "Series count (1..10)");
  synth->add_option("--seed", synth_seed, "Corpus seed");
  synth->add_option("--advantage", synth_advantage,
                    "Baseline advantage in [0,1]");

  auto* calendar =
      app.add_subcommand("calendar", "List forecast events in a month range");
  std::string cal_from;
  std::string cal_to;
  calendar->add_option("--from", cal_from, "First month, YYYY-MM")->required();
  calendar->add_option("--to", cal_to, "Last month, YYYY-MM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(config_path, ov);
    if (run->parsed()) return cmd_run(config_path, ov);
    if (report->parsed()) return cmd_report(config_path, ov);
    if (synth->parsed()) {
      return cmd_synth(synth_out, synth_series, synth_seed, synth_advantage);
    }
    return cmd_calendar(cal_from, cal_to);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
