#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "semifore/baseline.hpp"
#include "semifore/calendar.hpp"
#include "semifore/records.hpp"
#include "semifore/series.hpp"

namespace semifore::eval {

struct MetricTriple {
  double mse = 0.0;
  double mape = 0.0;  // fraction, not percent; reports multiply by 100
  double mae = 0.0;
};

// MSE = 1/T Σ (f−a)², MAPE = 1/T Σ |f−a|/a, MAE = 1/T Σ |f−a|.
// Lengths must match and be non-zero; actuals strictly positive (MAPE).
MetricTriple metrics(const std::vector<double>& actuals,
                     const std::vector<double>& forecasts);

enum class MetricKind { kMse, kMape, kMae };
const char* metric_name(MetricKind m);
double metric_of(const MetricTriple& t, MetricKind m);
inline constexpr MetricKind kAllMetrics[] = {MetricKind::kMse, MetricKind::kMape,
                                             MetricKind::kMae};

enum class EventGroup { kAlgorithmicUpdate, kMeeting, kOverall };
const char* event_group_name(EventGroup g);
bool group_includes(EventGroup g, baseline::EventType t);
inline constexpr EventGroup kAllGroups[] = {EventGroup::kAlgorithmicUpdate,
                                            EventGroup::kMeeting,
                                            EventGroup::kOverall};

// Square error panel: one error value per (category, forecaster).
struct ErrorPanel {
  std::vector<std::string> forecasters;
  std::vector<std::string> categories;
  std::vector<std::vector<double>> errors;  // [category][forecaster]
};

// Cell = mean over categories of a forecaster's error divided by the same
// mean for the baseline column (ratio of means, not mean of ratios). A zero
// baseline mean yields +inf for any nonzero numerator and 1 for a zero one,
// so a perfect baseline dominates instead of faulting the run.
std::vector<double> relative_cells(const ErrorPanel& panel,
                                   std::size_t baseline_col);

// Ascending ranks within each category, midrank for ties, averaged over
// categories. Per category the ranks sum to M(M+1)/2.
std::vector<double> mean_rank_cells(const ErrorPanel& panel);
std::vector<double> rank_row(const std::vector<double>& errors);

// Fraction of categories where each forecaster attains the minimum error;
// ties split credit equally. Each result row sums to 1.
std::vector<double> best_frequency_cells(const ErrorPanel& panel);

// One scored calendar event for one category: the actual quarter total and
// every forecaster's quarter estimate, aligned with a shared column list.
struct QuarterScore {
  std::string category;
  Quarter quarter;
  baseline::EventType type = baseline::EventType::kMeeting;
  double actual = 0.0;
  std::vector<double> estimates;
};

struct ScorePanel {
  std::vector<std::string> columns;  // baseline first, then models
  std::vector<QuarterScore> scores;
  std::vector<std::string> notes;    // dropped events/categories, with reasons
};

// Record lookup keyed by (series, model, train_end, target_month).
class RecordIndex {
 public:
  explicit RecordIndex(const std::vector<ForecastRecord>& records);
  const ForecastRecord* find(const std::string& series, const std::string& model,
                             MonthIndex train_end, MonthIndex target) const;

 private:
  std::map<std::string, ForecastRecord> by_key_;
};

// Quarter estimate under the two origin regimes. h=3: the three monthly
// forecasts issued from the month before the quarter. h=2: the quarter's
// first month is already observed, so actual(m1) plus the two forecasts
// issued from m1. Throws FitError when a needed record or actual is absent.
double quarter_estimate(const RecordIndex& index, const MonthlySeries& actuals,
                        const baseline::CalendarEvent& event, int h,
                        const std::string& model);

// Assembles the scored panel for one horizon regime. An event is scored for
// a category only when the actual quarter total, the baseline value, and
// every model's estimate are all available; partially covered events are
// dropped with a note so each comparison covers an identical event set.
ScorePanel build_scores(const std::vector<ForecastRecord>& records,
                        const std::vector<MonthlySeries>& series_set,
                        const std::vector<baseline::BaselineEvent>& baseline_events,
                        const std::vector<baseline::CalendarEvent>& calendar,
                        int h, const std::vector<std::string>& model_columns,
                        const std::string& baseline_column = "Baseline");

// Per-(group, metric) error panel over categories; categories missing every
// event of the group are omitted.
ErrorPanel metric_panel(const ScorePanel& panel, EventGroup group,
                        MetricKind metric);

struct TableRow {
  EventGroup group = EventGroup::kOverall;
  MetricKind metric = MetricKind::kMse;
  std::vector<double> cells;
};

struct Tables {
  std::vector<std::string> columns;
  std::vector<TableRow> relative;
  std::vector<TableRow> ranks;
  std::vector<TableRow> frequency;
};

// All nine (group × metric) rows of the three tables; baseline column is
// column 0 of the panel.
Tables compute_tables(const ScorePanel& panel);

struct CensusRow {
  std::string klass;  // Long, Medium, Short, All
  int count = 0;
  double mean_length = 0.0;
  int min_length = 0;
  int max_length = 0;
};

std::vector<CensusRow> length_census(const std::vector<MonthlySeries>& series_set,
                                     const LengthThresholds& thresholds = {});

// Score panel restricted to the categories of one length class.
ScorePanel restrict_to_class(const ScorePanel& panel,
                             const std::vector<MonthlySeries>& series_set,
                             LengthClass klass,
                             const LengthThresholds& thresholds = {});

}  // namespace semifore::eval
