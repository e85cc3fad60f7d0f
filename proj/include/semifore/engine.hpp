#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "semifore/boxcox.hpp"
#include "semifore/calendar.hpp"
#include "semifore/records.hpp"
#include "semifore/series.hpp"

namespace semifore::engine {

// Fitted families, in ensemble pool order. "Baseline" is not a family: it
// comes from the external forecast file, never from a fit.
enum class ModelFamily {
  kSarima,
  kEts,
  kSes,
  kKnn,
  kGpr,
  kSvr,
  kForest,
  kExtraTrees,
};

inline constexpr ModelFamily kAllFamilies[] = {
    ModelFamily::kSarima, ModelFamily::kEts,    ModelFamily::kSes,
    ModelFamily::kKnn,    ModelFamily::kGpr,    ModelFamily::kSvr,
    ModelFamily::kForest, ModelFamily::kExtraTrees,
};

const char* family_id(ModelFamily f);  // "SARIMA", "ETS", ..., "RF", "ET"
bool parse_family(const std::string& id, ModelFamily* out);

inline constexpr const char* kEnsembleId = "Ensemble";
inline constexpr const char* kBaselineId = "Baseline";

// Every training window must reach back at least this far.
inline constexpr int kMinTrainMonths = 24;

// Tuning grids plus the fixed tree count, overridable from the run
// configuration; the defaults are the standard search spaces.
struct GridSettings {
  std::vector<int> knn_k = {1, 2, 3, 4, 5, 7, 9};
  std::vector<int> knn_p = {1, 2, 3};
  std::vector<double> svr_sigma = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0};
  std::vector<double> svr_cost = {1.0 / 4, 1.0 / 2, 1.0, 2.0, 4.0};
  std::vector<int> forest_mtry = {2, 7, 12, 16, 23};
  std::vector<int> forest_min_node = {5, 7, 10};
  int num_trees = 500;
};

// Rejects empty grid axes and nonpositive grid values.
void check_grids(const GridSettings& grids);

enum class OriginMode { kMonthly, kQuarterEvent };

// One rolling-origin evaluation point: fit on data through train_end,
// forecast the listed consecutive months.
struct Origin {
  MonthIndex train_end;
  std::vector<MonthIndex> targets;
};

// Monthly protocol: one origin per test month t in [test_start, series end]
// with train_end = t-1 and targets t .. t+max_h-1 clipped to the series
// end. Origins whose training window is shorter than kMinTrainMonths are
// not emitted.
std::vector<Origin> plan_monthly_origins(const MonthlySeries& series,
                                         MonthIndex test_start, int max_h);

// Calendar protocol: one origin per forecast event whose month is >=
// test_start and whose target quarter the series fully covers. The event
// lands mid-quarter at m2; h = 3 forecasts the whole quarter from m1-1,
// h = 2 already observes m1 and forecasts m2, m3 from m1.
std::vector<Origin> plan_event_origins(const MonthlySeries& series,
                                       MonthIndex test_start, int h);

// Lag depth for the supervised regressors: grows with the window but caps
// at two seasonal cycles, and always leaves at least 22 training rows.
int lag_depth_for(int window_length);

// Seed for one (series, origin, family) task, derived order-sensitively
// from the master seed so no task ordering or thread schedule can shift it.
std::uint64_t task_seed(std::uint64_t master_seed, const std::string& series_id,
                        MonthIndex train_end, const std::string& model_id);

// Fits one family at one origin and returns one record per target month.
// The transform parameter must come from the origin's training window.
// Grid families tune on the window minus its final year first; tuning,
// fitting, and forecasting see data through train_end only.
std::vector<ForecastRecord> forecast_task(const MonthlySeries& series,
                                          const Origin& origin,
                                          ModelFamily family,
                                          const transform::BoxCoxParams& lambda,
                                          std::uint64_t seed,
                                          const GridSettings& grids);

struct RunSettings {
  OriginMode mode = OriginMode::kQuarterEvent;
  MonthIndex test_start;
  std::vector<int> horizons;        // quarter-event: subset of {2, 3}
  std::vector<std::string> models;  // family ids, optionally kEnsembleId
  std::uint64_t seed = 0;
  int workers = 1;
  GridSettings grids;
};

struct TaskFailure {
  std::string series;
  MonthIndex train_end;
  std::string model;
  std::string reason;
};

struct RunResult {
  std::vector<ForecastRecord> records;  // canonical record_order
  std::size_t planned_tasks = 0;
  std::vector<TaskFailure> failures;
  // λ per (series, train_end), for the manifest.
  std::vector<std::tuple<std::string, MonthIndex, double>> lambdas;
};

// Runs every (series, origin, family) task across `workers` threads, then
// assembles ensemble records sequentially. Individual fit failures are
// collected, not fatal; the run throws FitError only when more than 1% of
// planned tasks fail. Identical settings produce byte-identical record
// streams regardless of worker count.
RunResult run_forecasts(const std::vector<MonthlySeries>& corpus,
                        const RunSettings& settings);

}  // namespace semifore::engine
