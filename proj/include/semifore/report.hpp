#pragma once

#include <string>
#include <vector>

#include "semifore/baseline.hpp"
#include "semifore/calendar.hpp"
#include "semifore/records.hpp"
#include "semifore/series.hpp"

namespace semifore::report {

// Fixed-width cell format shared by every table CSV and every number
// rendered into a chart, so chart values can be checked against CSV cells
// by string equality.
std::string format_cell(double v);

// Model ids reordered into the fixed presentation order: fitted families
// first as declared by the engine, the ensemble last. Unknown ids are
// rejected; "Baseline" must not be in the list (it is always prepended by
// the scoring layer).
std::vector<std::string> presentation_order(
    const std::vector<std::string>& models);

struct ReportOptions {
  std::vector<int> horizons;             // rendered 3-left, 2-right
  MonthIndex test_start;
  std::vector<std::string> models;       // fitted model ids, any order
  LengthThresholds thresholds;
};

// Renders every table and chart into out_dir from finished run outputs:
//   relative_<h>.csv, ranks_<h>.csv, frequency_<h>.csv
//   by_category_{mse,mape,mae}_<h>.csv
//   frequency_chart.svg
//   lengths_census.csv, lengths_bins.csv, lengths_histogram.svg
//   notes.txt
// Pure function of its inputs; returns the files written, in order.
std::vector<std::string> write_reports(
    const std::string& out_dir, const std::vector<ForecastRecord>& records,
    const std::vector<MonthlySeries>& series_set,
    const std::vector<baseline::BaselineEvent>& baseline_events,
    const ReportOptions& options);

}  // namespace semifore::report
