#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "semifore/errors.hpp"
#include "semifore/evaluation.hpp"
#include "semifore/rng.hpp"
#include "oracles.hpp"

using namespace semifore;
using namespace semifore::eval;

TEST_CASE("metric triple on worked examples") {
  const auto t = metrics({100.0, 200.0}, {110.0, 190.0});
  CHECK(t.mse == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(t.mape == doctest::Approx(0.075).epsilon(1e-12));
  CHECK(t.mae == doctest::Approx(10.0).epsilon(1e-12));

  const auto u = metrics({50.0}, {60.0});
  CHECK(u.mse == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(u.mape == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(u.mae == doctest::Approx(10.0).epsilon(1e-12));

  const auto z = metrics({3.0, 4.0, 5.0}, {3.0, 4.0, 5.0});
  CHECK(z.mse == 0.0);
  CHECK(z.mape == 0.0);
  CHECK(z.mae == 0.0);
}

TEST_CASE("metric preconditions") {
  CHECK_THROWS_AS(metrics({}, {}), ValidationError);
  CHECK_THROWS_AS(metrics({1.0, 2.0}, {1.0}), ValidationError);
  CHECK_THROWS_AS(metrics({0.0}, {1.0}), ValidationError);
  CHECK_THROWS_AS(metrics({-1.0}, {1.0}), ValidationError);
}

TEST_CASE("metrics match direct arithmetic on random vectors") {
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto stream = rng::split_stream(42, static_cast<std::uint64_t>(trial));
    const int n = 1 + static_cast<int>(stream.next_below(40));
    std::vector<double> actuals(n), forecasts(n);
    for (int i = 0; i < n; ++i) {
      actuals[i] = 1.0 + 1e4 * stream.next_unit();
      forecasts[i] = actuals[i] * (0.5 + stream.next_unit());
    }
    const auto got = metrics(actuals, forecasts);
    const auto want = oracles::metrics_direct(actuals, forecasts);
    const auto rel = [](double a, double b) {
      const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
      return std::fabs(a - b) / scale;
    };
    worst = std::max({worst, rel(got.mse, want.mse), rel(got.mape, want.mape),
                      rel(got.mae, want.mae)});
  }
  CHECK(worst < 1e-12);
}

namespace {

ErrorPanel small_panel() {
  ErrorPanel p;
  p.forecasters = {"Baseline", "A", "B"};
  p.categories = {"c1", "c2"};
  p.errors = {{4.0, 2.0, 8.0}, {4.0, 4.0, 0.0}};
  return p;
}

}  // namespace

TEST_CASE("relative cells are ratios of means with unit baseline") {
  const auto cells = relative_cells(small_panel(), 0);
  REQUIRE(cells.size() == 3);
  CHECK(cells[0] == 1.0);
  CHECK(cells[1] == doctest::Approx(0.75).epsilon(1e-12));  // mean 3 over mean 4
  CHECK(cells[2] == doctest::Approx(1.0).epsilon(1e-12));   // mean 4 over mean 4
}

TEST_CASE("zero baseline mean dominates rather than faulting") {
  ErrorPanel p;
  p.forecasters = {"Baseline", "A", "B"};
  p.categories = {"c1"};
  p.errors = {{0.0, 3.0, 0.0}};
  const auto cells = relative_cells(p, 0);
  CHECK(cells[0] == 1.0);
  CHECK(std::isinf(cells[1]));
  CHECK(cells[2] == 1.0);
}

TEST_CASE("rank rows use midranks and sum to M(M+1)/2") {
  const auto plain = rank_row({3.0, 1.0, 2.0});
  CHECK(plain == std::vector<double>{3.0, 1.0, 2.0});

  const auto tied = rank_row({2.0, 2.0, 5.0});
  CHECK(tied[0] == doctest::Approx(1.5));
  CHECK(tied[1] == doctest::Approx(1.5));
  CHECK(tied[2] == doctest::Approx(3.0));

  const auto all_tied = rank_row({7.0, 7.0, 7.0, 7.0});
  for (double r : all_tied) CHECK(r == doctest::Approx(2.5));

  for (int trial = 0; trial < 200; ++trial) {
    auto stream = rng::split_stream(7, static_cast<std::uint64_t>(trial));
    const int m = 2 + static_cast<int>(stream.next_below(9));
    std::vector<double> errors(m);
    for (double& e : errors) {
      // Coarse grid provokes plenty of exact ties.
      e = static_cast<double>(stream.next_below(5));
    }
    const auto got = rank_row(errors);
    const auto want = oracles::ranks_by_pair_counts(errors);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
      sum += got[i];
    }
    CHECK(sum == doctest::Approx(m * (m + 1) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("mean ranks average the per-category rows") {
  const auto cells = mean_rank_cells(small_panel());
  // c1 ranks: 2,1,3. c2 ranks: 2.5,2.5,1.
  CHECK(cells[0] == doctest::Approx(2.25));
  CHECK(cells[1] == doctest::Approx(1.75));
  CHECK(cells[2] == doctest::Approx(2.0));
}

TEST_CASE("best frequency splits tie credit and sums to one") {
  ErrorPanel p;
  p.forecasters = {"Baseline", "A", "B", "C"};
  p.categories = {"c1", "c2", "c3", "c4"};
  p.errors = {{1.0, 2.0, 3.0, 4.0},
              {5.0, 1.0, 2.0, 3.0},
              {1.0, 9.0, 9.0, 9.0},
              {9.0, 9.0, 1.0, 9.0}};
  const auto cells = best_frequency_cells(p);
  CHECK(cells[0] == doctest::Approx(0.5));
  CHECK(cells[1] == doctest::Approx(0.25));
  CHECK(cells[2] == doctest::Approx(0.25));
  CHECK(cells[3] == doctest::Approx(0.0));

  ErrorPanel tie;
  tie.forecasters = {"Baseline", "A"};
  tie.categories = {"c1"};
  tie.errors = {{2.0, 2.0}};
  const auto split = best_frequency_cells(tie);
  CHECK(split[0] == doctest::Approx(0.5));
  CHECK(split[1] == doctest::Approx(0.5));
  CHECK(std::accumulate(cells.begin(), cells.end(), 0.0) ==
        doctest::Approx(1.0));
}

namespace {

// Twelve observed months of 2024 for one category, values 10,11,...,21.
MonthlySeries ramp_series(const std::string& id) {
  std::vector<double> values;
  for (int i = 0; i < 12; ++i) values.push_back(10.0 + i);
  return MonthlySeries(id, MonthIndex::from_ym(2024, 1), std::move(values));
}

ForecastRecord rec(const std::string& series, const std::string& model,
                   MonthIndex train_end, MonthIndex target, double value) {
  return {series, model, train_end, target, value, 1.0, "{}"};
}

}  // namespace

TEST_CASE("quarter estimates under both horizon regimes") {
  const auto series = ramp_series("T01");
  // 2024Q4: months 10,11,12 with actuals 19,20,21.
  const baseline::CalendarEvent event{MonthIndex::from_ym(2024, 11),
                                      baseline::EventType::kMeeting,
                                      Quarter{2024, 4}};
  const auto m9 = MonthIndex::from_ym(2024, 9);
  const auto m10 = MonthIndex::from_ym(2024, 10);
  const auto m11 = MonthIndex::from_ym(2024, 11);
  const auto m12 = MonthIndex::from_ym(2024, 12);

  std::vector<ForecastRecord> records = {
      rec("T01", "m", m9, m10, 10.0), rec("T01", "m", m9, m11, 11.0),
      rec("T01", "m", m9, m12, 12.0), rec("T01", "m", m10, m11, 11.0),
      rec("T01", "m", m10, m12, 12.0)};
  const RecordIndex index(records);

  // Three steps ahead from September: sum of the three forecasts.
  CHECK(quarter_estimate(index, series, event, 3, "m") ==
        doctest::Approx(33.0));
  // Two steps ahead from October: observed October plus two forecasts.
  CHECK(quarter_estimate(index, series, event, 2, "m") ==
        doctest::Approx(19.0 + 11.0 + 12.0));
  CHECK_THROWS_AS(quarter_estimate(index, series, event, 3, "absent"),
                  FitError);
}

TEST_CASE("score assembly drops partially covered events with notes") {
  const auto series = ramp_series("T01");
  const auto m9 = MonthIndex::from_ym(2024, 9);
  const auto m10 = MonthIndex::from_ym(2024, 10);
  const auto m11 = MonthIndex::from_ym(2024, 11);
  const auto m12 = MonthIndex::from_ym(2024, 12);
  std::vector<ForecastRecord> records = {
      rec("T01", "m", m9, m10, 19.0), rec("T01", "m", m9, m11, 20.0),
      rec("T01", "m", m9, m12, 21.0)};

  const std::vector<baseline::CalendarEvent> calendar = {
      {MonthIndex::from_ym(2024, 11), baseline::EventType::kMeeting,
       Quarter{2024, 4}},
      {MonthIndex::from_ym(2025, 2), baseline::EventType::kAlgorithmicUpdate,
       Quarter{2025, 1}}};
  const std::vector<baseline::BaselineEvent> published = {
      {"T01", Quarter{2024, 4}, baseline::EventType::kMeeting, 58.0},
      {"T01", Quarter{2025, 1}, baseline::EventType::kAlgorithmicUpdate, 60.0}};

  const auto panel =
      build_scores(records, {series}, published, calendar, 3, {"m"});
  REQUIRE(panel.scores.size() == 1);  // 2025Q1 has no records and no actuals
  CHECK(panel.columns == std::vector<std::string>{"Baseline", "m"});
  CHECK(panel.scores[0].actual == doctest::Approx(60.0));  // 19+20+21
  CHECK(panel.scores[0].estimates[0] == doctest::Approx(58.0));
  CHECK(panel.scores[0].estimates[1] == doctest::Approx(60.0));
  CHECK_FALSE(panel.notes.empty());

  const auto tables = compute_tables(panel);
  REQUIRE(!tables.relative.empty());
  for (const auto& row : tables.relative) {
    CHECK(row.cells[0] == 1.0);
    // The model predicted the exact quarter total, so it dominates.
    CHECK(row.cells[1] == 0.0);
  }
  for (const auto& row : tables.frequency) {
    CHECK(std::accumulate(row.cells.begin(), row.cells.end(), 0.0) ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("length census partitions and aggregates") {
  std::vector<MonthlySeries> set;
  const auto mk = [](const std::string& id, int n) {
    return MonthlySeries(id, MonthIndex::from_ym(1991, 1),
                         std::vector<double>(static_cast<std::size_t>(n), 1.0));
  };
  set.push_back(mk("L1", 392));
  set.push_back(mk("L2", 392));
  set.push_back(mk("M1", 300));
  set.push_back(mk("S1", 100));
  const auto census = length_census(set);
  REQUIRE(census.size() == 4);
  CHECK(census[0].klass == "Long");
  CHECK(census[0].count == 2);
  CHECK(census[0].mean_length == doctest::Approx(392.0));
  CHECK(census[1].klass == "Medium");
  CHECK(census[1].count == 1);
  CHECK(census[1].min_length == 300);
  CHECK(census[2].klass == "Short");
  CHECK(census[2].count == 1);
  CHECK(census[3].klass == "All");
  CHECK(census[3].count == 4);
  CHECK(census[3].mean_length == doctest::Approx((392 + 392 + 300 + 100) / 4.0));
  CHECK(census[3].min_length == 100);
  CHECK(census[3].max_length == 392);
}

TEST_CASE("relative cells are scale invariant") {
  auto panel = small_panel();
  auto scaled = panel;
  for (auto& row : scaled.errors) {
    for (double& e : row) e *= 1e6;
  }
  const auto a = relative_cells(panel, 0);
  const auto b = relative_cells(scaled, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}
