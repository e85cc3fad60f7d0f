#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "semifore/baseline.hpp"
#include "semifore/csv.hpp"
#include "semifore/errors.hpp"
#include "semifore/report.hpp"
#include "semifore/series.hpp"

using namespace semifore;

namespace {

// Two flat series with hand-picked forecast errors, so every table cell has a
// pencil-and-paper value: SES is off by +1 per month, KNN by -2, the baseline
// by +3 (A) and -6 (B) per quarter.
struct Scenario {
  std::vector<MonthlySeries> series;
  std::vector<baseline::BaselineEvent> baseline_events;
  std::vector<ForecastRecord> records;
  report::ReportOptions options;
};

Scenario make_scenario() {
  Scenario sc;
  const MonthIndex start = MonthIndex::from_ym(2021, 1);
  const MonthIndex last = MonthIndex::from_ym(2023, 9);
  const int n = last - start + 1;
  sc.series.emplace_back("A", start, std::vector<double>(n, 100.0));
  sc.series.emplace_back("B", start, std::vector<double>(n, 200.0));

  const double level[] = {100.0, 200.0};
  const double baseline_bias[] = {3.0, -6.0};
  const double model_bias[] = {1.0, -2.0};  // SES, KNN per month
  const char* models[] = {"SES", "KNN"};

  const auto calendar =
      baseline::event_calendar(MonthIndex::from_ym(2023, 1), last);
  for (int si = 0; si < 2; ++si) {
    const std::string id = si == 0 ? "A" : "B";
    for (const auto& ev : calendar) {
      const MonthIndex m1 = quarter_first_month(ev.target);
      sc.baseline_events.push_back(baseline::BaselineEvent{
          id, ev.target, ev.type, 3.0 * level[si] + baseline_bias[si]});
      for (int mi = 0; mi < 2; ++mi) {
        const double value = level[si] + model_bias[mi];
        for (int t = 0; t < 3; ++t) {  // h=3: trained before the quarter
          sc.records.push_back(ForecastRecord{id, models[mi], m1 - 1, m1 + t,
                                              value, 1.0, "{}"});
        }
        for (int t = 1; t < 3; ++t) {  // h=2: first month already known
          sc.records.push_back(ForecastRecord{id, models[mi], m1, m1 + t,
                                              value, 1.0, "{}"});
        }
      }
    }
  }
  sc.options.horizons = {2, 3};
  sc.options.test_start = MonthIndex::from_ym(2023, 1);
  sc.options.models = {"SES", "KNN"};
  sc.options.thresholds = LengthThresholds{};
  return sc;
}

std::string fresh_dir(const char* tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("semifore_report_" + std::string(tag));
  std::filesystem::remove_all(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string>& find_row(const csv::Table& t,
                                         const std::string& group,
                                         const std::string& second) {
  for (const auto& row : t.rows) {
    if (row[0] == group && row[1] == second) return row;
  }
  REQUIRE(false);
  static const std::vector<std::string> none;
  return none;
}

}  // namespace

TEST_CASE("cell formatting is fixed four decimals") {
  CHECK(report::format_cell(0.25) == "0.2500");
  CHECK(report::format_cell(1.0) == "1.0000");
  CHECK(report::format_cell(1.0 / 3.0) == "0.3333");
  CHECK(report::format_cell(162.0 + 5.0 / 6.0) == "162.8333");
  CHECK(report::format_cell(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("presentation order follows the fitting order with Ensemble last") {
  const std::vector<std::string> shuffled = {"KNN", "Ensemble", "SARIMA",
                                             "SES"};
  const auto ordered = report::presentation_order(shuffled);
  CHECK(ordered == std::vector<std::string>{"SARIMA", "SES", "KNN",
                                            "Ensemble"});
  CHECK_THROWS_AS(report::presentation_order({"SES", "Baseline"}),
                  ValidationError);
  CHECK_THROWS_AS(report::presentation_order({"SES", "XGB"}),
                  ValidationError);
  CHECK_THROWS_AS(report::presentation_order({"SES", "SES"}), ValidationError);
  CHECK_THROWS_AS(report::presentation_order({}), ValidationError);
}

TEST_CASE("report tables carry the hand-computed cells") {
  const auto sc = make_scenario();
  const std::string dir = fresh_dir("tables");
  const auto written = report::write_reports(dir, sc.records, sc.series,
                                             sc.baseline_events, sc.options);
  CHECK(written.size() == 17);
  for (const auto& path : written) {
    CHECK(std::filesystem::exists(path));
  }

  const auto relative3 = csv::read_file(dir + "/relative_3.csv");
  CHECK(relative3.header == std::vector<std::string>{"group", "metric",
                                                     "Baseline", "SES",
                                                     "KNN"});
  CHECK(relative3.rows.size() == 9);
  CHECK(relative3.rows[0][0] == "AlgorithmicUpdate");
  CHECK(relative3.rows[0][1] == "MSE");
  CHECK(relative3.rows[8][0] == "Overall");
  CHECK(relative3.rows[8][1] == "MAE");

  // h=3 overall means: baseline MAE (3+6)/2, SES 3, KNN 6.
  const auto& mae3 = find_row(relative3, "Overall", "MAE");
  CHECK(mae3[2] == "1.0000");
  CHECK(mae3[3] == "0.6667");
  CHECK(mae3[4] == "1.3333");
  const auto& mse3 = find_row(relative3, "Overall", "MSE");
  CHECK(mse3[3] == "0.4000");  // 9 / 22.5
  CHECK(mse3[4] == "1.6000");
  const auto& mape3 = find_row(relative3, "Overall", "MAPE");
  CHECK(mape3[3] == "0.7500");
  CHECK(mape3[4] == "1.5000");

  // h=2 squeezes the model errors (first month known) but not the baseline.
  const auto relative2 = csv::read_file(dir + "/relative_2.csv");
  const auto& mae2 = find_row(relative2, "Overall", "MAE");
  CHECK(mae2[3] == "0.4444");  // 2 / 4.5
  CHECK(mae2[4] == "0.8889");

  // Ranks: A row ties baseline with SES, B row ties baseline with KNN.
  const auto ranks3 = csv::read_file(dir + "/ranks_3.csv");
  const auto& rmae = find_row(ranks3, "Overall", "MAE");
  CHECK(rmae[2] == "2.0000");
  CHECK(rmae[3] == "1.2500");
  CHECK(rmae[4] == "2.7500");
  for (const auto& row : ranks3.rows) {
    double sum = 0.0;
    for (std::size_t j = 2; j < row.size(); ++j) sum += csv::parse_double(row[j], "cell");
    CHECK(sum == doctest::Approx(6.0).epsilon(1e-12));  // 3 * 4 / 2
  }

  const auto freq3 = csv::read_file(dir + "/frequency_3.csv");
  const auto& fmae = find_row(freq3, "Overall", "MAE");
  CHECK(fmae[2] == "0.2500");
  CHECK(fmae[3] == "0.7500");
  CHECK(fmae[4] == "0.0000");
  for (const auto& row : freq3.rows) {
    double sum = 0.0;
    for (std::size_t j = 2; j < row.size(); ++j) sum += csv::parse_double(row[j], "cell");
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Per-category file scales MAPE to percent.
  const auto mape_by_cat = csv::read_file(dir + "/by_category_mape_3.csv");
  CHECK(mape_by_cat.header ==
        std::vector<std::string>{"group", "category", "Baseline", "SES",
                                 "KNN"});
  const auto& cat_a = find_row(mape_by_cat, "AlgorithmicUpdate", "A");
  CHECK(cat_a[2] == "1.0000");  // 3 / 300 as percent
  CHECK(cat_a[3] == "1.0000");
  CHECK(cat_a[4] == "2.0000");
  const auto mae_by_cat = csv::read_file(dir + "/by_category_mae_3.csv");
  const auto& cat_b = find_row(mae_by_cat, "Overall", "B");
  CHECK(cat_b[2] == "6.0000");
  CHECK(cat_b[3] == "3.0000");
  CHECK(cat_b[4] == "6.0000");
}

TEST_CASE("chart values are string-equal to table cells") {
  const auto sc = make_scenario();
  const std::string dir = fresh_dir("chart");
  report::write_reports(dir, sc.records, sc.series, sc.baseline_events,
                        sc.options);
  const std::string svg = slurp(dir + "/frequency_chart.svg");

  // Every frequency cell of both horizons appears as a tagged bar.
  for (int h : {3, 2}) {
    const auto freq = csv::read_file(dir + "/frequency_" + std::to_string(h) +
                                     ".csv");
    for (const auto& row : freq.rows) {
      for (std::size_t j = 2; j < row.size(); ++j) {
        const std::string needle = "data-h=\"" + std::to_string(h) +
                                   "\" data-group=\"" + row[0] +
                                   "\" data-metric=\"" + row[1] +
                                   "\" data-model=\"" + freq.header[j] +
                                   "\" data-value=\"" + row[j] + "\"";
        CHECK_MESSAGE(svg.find(needle) != std::string::npos, needle);
      }
    }
  }
  // h=3 panels sit left of h=2 panels.
  CHECK(svg.find("data-h=\"3\"") < svg.find("data-h=\"2\""));
}

TEST_CASE("length census and histogram agree") {
  const auto sc = make_scenario();
  const std::string dir = fresh_dir("census");
  report::write_reports(dir, sc.records, sc.series, sc.baseline_events,
                        sc.options);

  const auto census = csv::read_file(dir + "/lengths_census.csv");
  CHECK(census.header == std::vector<std::string>{"class", "count",
                                                  "avg_length", "min_length",
                                                  "max_length"});
  // Both series run 2021-01..2023-09: 33 months, Short only.
  CHECK(census.rows.size() == 2);
  CHECK(census.rows[0] == std::vector<std::string>{"Short", "2", "33.0000",
                                                   "33", "33"});
  CHECK(census.rows[1] == std::vector<std::string>{"All", "2", "33.0000",
                                                   "33", "33"});

  const auto bins = csv::read_file(dir + "/lengths_bins.csv");
  CHECK(bins.rows.size() == 1);
  CHECK(bins.rows[0] == std::vector<std::string>{"0", "49", "2"});

  const std::string svg = slurp(dir + "/lengths_histogram.svg");
  CHECK(svg.find("data-bin-start=\"0\" data-bin-end=\"49\" data-count=\"2\"") !=
        std::string::npos);
}

TEST_CASE("uncovered events are dropped with a note") {
  auto sc = make_scenario();
  // Remove KNN's h=3 records for B's Q2 event: that event can no longer be
  // scored at h=3 for any column.
  const MonthIndex q2_first = MonthIndex::from_ym(2023, 4);
  sc.records.erase(
      std::remove_if(sc.records.begin(), sc.records.end(),
                     [&](const ForecastRecord& r) {
                       return r.series == "B" && r.model == "KNN" &&
                              r.train_end == q2_first - 1;
                     }),
      sc.records.end());
  const std::string dir = fresh_dir("notes");
  report::write_reports(dir, sc.records, sc.series, sc.baseline_events,
                        sc.options);

  const std::string notes = slurp(dir + "/notes.txt");
  CHECK(notes.find("h=3: ") != std::string::npos);
  CHECK(notes.find("B") != std::string::npos);
  // h=2 records are untouched, so no h=2 note.
  CHECK(notes.find("h=2: ") == std::string::npos);

  // The dropped event leaves B with two h=3 events; tables still well formed.
  const auto freq3 = csv::read_file(dir + "/frequency_3.csv");
  for (const auto& row : freq3.rows) {
    double sum = 0.0;
    for (std::size_t j = 2; j < row.size(); ++j) sum += csv::parse_double(row[j], "cell");
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("report input validation") {
  const auto sc = make_scenario();
  const std::string dir = fresh_dir("invalid");
  auto opts = sc.options;
  opts.horizons = {};
  CHECK_THROWS_AS(report::write_reports(dir, sc.records, sc.series,
                                        sc.baseline_events, opts),
                  ValidationError);
  opts = sc.options;
  opts.horizons = {1};
  CHECK_THROWS_AS(report::write_reports(dir, sc.records, sc.series,
                                        sc.baseline_events, opts),
                  ValidationError);
  opts = sc.options;
  opts.test_start = MonthIndex::from_ym(2024, 1);  // past every series end
  CHECK_THROWS_AS(report::write_reports(dir, sc.records, sc.series,
                                        sc.baseline_events, opts),
                  ValidationError);
  CHECK_THROWS_AS(report::write_reports(dir, sc.records, {},
                                        sc.baseline_events, sc.options),
                  ValidationError);
}
