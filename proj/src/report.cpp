#include "semifore/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "semifore/csv.hpp"
#include "semifore/engine.hpp"
#include "semifore/errors.hpp"
#include "semifore/evaluation.hpp"

namespace semifore::report {
namespace {

// Chart geometry. Bars are scaled so a frequency of 1 fills the plot and a
// census count fills proportionally; value strings on the bars are what the
// equality contract covers, pixels are presentation only.
constexpr int kBarWidth = 30;
constexpr int kBarSlot = 44;
constexpr int kPlotHeight = 100;
constexpr int kPanelTitleHeight = 24;
constexpr int kLabelHeight = 64;
constexpr int kMargin = 20;

std::string fmt_int(int v) { return std::to_string(v); }

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("report: cannot write " + path);
  out << body;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

csv::Table grouped_table(const std::vector<std::string>& columns,
                         const std::vector<eval::TableRow>& rows) {
  csv::Table t;
  t.header = {"group", "metric"};
  t.header.insert(t.header.end(), columns.begin(), columns.end());
  for (const auto& row : rows) {
    std::vector<std::string> cells = {eval::event_group_name(row.group),
                                      eval::metric_name(row.metric)};
    for (double v : row.cells) cells.push_back(format_cell(v));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

csv::Table by_category_table(const eval::ScorePanel& panel,
                             eval::MetricKind metric) {
  csv::Table t;
  t.header = {"group", "category"};
  t.header.insert(t.header.end(), panel.columns.begin(), panel.columns.end());
  const double scale = metric == eval::MetricKind::kMape ? 100.0 : 1.0;
  for (eval::EventGroup group : eval::kAllGroups) {
    const auto errors = eval::metric_panel(panel, group, metric);
    for (std::size_t c = 0; c < errors.categories.size(); ++c) {
      std::vector<std::string> cells = {eval::event_group_name(group),
                                        errors.categories[c]};
      for (double v : errors.errors[c]) cells.push_back(format_cell(scale * v));
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

struct FrequencyChartData {
  int h = 0;
  std::vector<std::string> columns;
  std::vector<eval::TableRow> rows;
};

std::string render_frequency_chart(const std::vector<FrequencyChartData>& hs) {
  const std::size_t ncols = hs.empty() ? 0 : hs[0].columns.size();
  const int panel_w = 24 + static_cast<int>(ncols) * kBarSlot + 12;
  const int panel_h = kPanelTitleHeight + kPlotHeight + kLabelHeight;
  const std::size_t nrows = hs.empty() ? 0 : hs[0].rows.size();
  const int width = 2 * kMargin +
                    static_cast<int>(hs.size()) * (panel_w + 24) - 24;
  const int height = 2 * kMargin + 20 +
                     static_cast<int>(nrows) * (panel_h + 12);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt_int(width) + "\" height=\"" + fmt_int(height) +
         "\" viewBox=\"0 0 " + fmt_int(width) + " " + fmt_int(height) +
         "\">\n";
  svg += "<style>text{font-family:Helvetica,Arial,sans-serif;}</style>\n";
  svg += "<rect width=\"" + fmt_int(width) + "\" height=\"" +
         fmt_int(height) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt_int(kMargin) + "\" y=\"" + fmt_int(kMargin) +
         "\" font-size=\"13\" font-weight=\"bold\">Share of best forecasts "
         "per event group and metric</text>\n";

  for (std::size_t hi = 0; hi < hs.size(); ++hi) {
    const auto& chart = hs[hi];
    const int px = kMargin + static_cast<int>(hi) * (panel_w + 24);
    for (std::size_t r = 0; r < chart.rows.size(); ++r) {
      const auto& row = chart.rows[r];
      const int py = kMargin + 20 + static_cast<int>(r) * (panel_h + 12);
      const int base_y = py + kPanelTitleHeight + kPlotHeight;
      svg += "<text x=\"" + fmt_int(px) + "\" y=\"" + fmt_int(py + 14) +
             "\" font-size=\"11\">" +
             xml_escape(std::string(eval::event_group_name(row.group)) +
                        ", " + eval::metric_name(row.metric) + ", h=" +
                        fmt_int(chart.h)) +
             "</text>\n";
      svg += "<line x1=\"" + fmt_int(px) + "\" y1=\"" + fmt_int(base_y) +
             "\" x2=\"" + fmt_int(px + panel_w - 12) + "\" y2=\"" +
             fmt_int(base_y) + "\" stroke=\"#999\"/>\n";
      for (std::size_t c = 0; c < chart.columns.size(); ++c) {
        const double value = row.cells[c];
        const int bar_h = static_cast<int>(
            std::lround(std::clamp(value, 0.0, 1.0) * kPlotHeight));
        const int bx = px + 24 + static_cast<int>(c) * kBarSlot;
        const std::string cell = format_cell(value);
        svg += "<rect x=\"" + fmt_int(bx) + "\" y=\"" +
               fmt_int(base_y - bar_h) + "\" width=\"" + fmt_int(kBarWidth) +
               "\" height=\"" + fmt_int(bar_h) + "\" fill=\"" +
               (chart.columns[c] == "Baseline" ? "#8c8c8c" : "#4a7aa7") +
               "\" data-h=\"" + fmt_int(chart.h) + "\" data-group=\"" +
               eval::event_group_name(row.group) + "\" data-metric=\"" +
               eval::metric_name(row.metric) + "\" data-model=\"" +
               xml_escape(chart.columns[c]) + "\" data-value=\"" + cell +
               "\"/>\n";
        svg += "<text x=\"" + fmt_int(bx + kBarWidth / 2) + "\" y=\"" +
               fmt_int(base_y - bar_h - 3) +
               "\" font-size=\"8\" text-anchor=\"middle\">" + cell +
               "</text>\n";
        svg += "<text x=\"" + fmt_int(bx + kBarWidth / 2) + "\" y=\"" +
               fmt_int(base_y + 12) + "\" font-size=\"9\" transform=\"rotate(-55 " +
               fmt_int(bx + kBarWidth / 2) + " " + fmt_int(base_y + 12) +
               ")\" text-anchor=\"end\">" + xml_escape(chart.columns[c]) +
               "</text>\n";
      }
    }
  }
  svg += "</svg>\n";
  return svg;
}

struct LengthBin {
  int lo = 0;
  int hi = 0;
  int count = 0;
};

std::vector<LengthBin> length_bins(const std::vector<MonthlySeries>& series) {
  int min_len = series.front().length();
  int max_len = min_len;
  for (const auto& s : series) {
    min_len = std::min(min_len, s.length());
    max_len = std::max(max_len, s.length());
  }
  std::vector<LengthBin> bins;
  for (int lo = (min_len / 50) * 50; lo <= max_len; lo += 50) {
    bins.push_back(LengthBin{lo, lo + 49, 0});
  }
  for (const auto& s : series) {
    bins[static_cast<std::size_t>(s.length() / 50 - min_len / 50)].count++;
  }
  return bins;
}

std::string render_length_histogram(const std::vector<LengthBin>& bins) {
  int max_count = 1;
  for (const auto& b : bins) max_count = std::max(max_count, b.count);
  const int plot_h = 140;
  const int width = 2 * kMargin + static_cast<int>(bins.size()) * kBarSlot + 24;
  const int height = 2 * kMargin + 20 + plot_h + 40;
  const int base_y = kMargin + 20 + plot_h;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt_int(width) + "\" height=\"" + fmt_int(height) +
         "\" viewBox=\"0 0 " + fmt_int(width) + " " + fmt_int(height) +
         "\">\n";
  svg += "<style>text{font-family:Helvetica,Arial,sans-serif;}</style>\n";
  svg += "<rect width=\"" + fmt_int(width) + "\" height=\"" +
         fmt_int(height) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt_int(kMargin) + "\" y=\"" + fmt_int(kMargin) +
         "\" font-size=\"13\" font-weight=\"bold\">Monthly history lengths"
         "</text>\n";
  svg += "<line x1=\"" + fmt_int(kMargin) + "\" y1=\"" + fmt_int(base_y) +
         "\" x2=\"" + fmt_int(width - kMargin) + "\" y2=\"" +
         fmt_int(base_y) + "\" stroke=\"#999\"/>\n";
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const auto& b = bins[i];
    const int bar_h = b.count * plot_h / max_count;
    const int bx = kMargin + 12 + static_cast<int>(i) * kBarSlot;
    svg += "<rect x=\"" + fmt_int(bx) + "\" y=\"" + fmt_int(base_y - bar_h) +
           "\" width=\"" + fmt_int(kBarWidth) + "\" height=\"" +
           fmt_int(bar_h) + "\" fill=\"#4a7aa7\" data-bin-start=\"" +
           fmt_int(b.lo) + "\" data-bin-end=\"" + fmt_int(b.hi) +
           "\" data-count=\"" + fmt_int(b.count) + "\"/>\n";
    svg += "<text x=\"" + fmt_int(bx + kBarWidth / 2) + "\" y=\"" +
           fmt_int(base_y - bar_h - 3) +
           "\" font-size=\"9\" text-anchor=\"middle\">" + fmt_int(b.count) +
           "</text>\n";
    svg += "<text x=\"" + fmt_int(bx + kBarWidth / 2) + "\" y=\"" +
           fmt_int(base_y + 14) + "\" font-size=\"8\" text-anchor=\"middle\">" +
           fmt_int(b.lo) + "-" + fmt_int(b.hi) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::string format_cell(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<std::string> presentation_order(
    const std::vector<std::string>& models) {
  std::set<std::string> pool(models.begin(), models.end());
  if (pool.size() != models.size()) {
    throw ValidationError("report: duplicate model id");
  }
  std::vector<std::string> ordered;
  for (engine::ModelFamily f : engine::kAllFamilies) {
    const std::string id = engine::family_id(f);
    if (pool.erase(id)) ordered.push_back(id);
  }
  if (pool.erase(engine::kEnsembleId)) {
    ordered.push_back(engine::kEnsembleId);
  }
  if (!pool.empty()) {
    throw ValidationError("report: unknown model id \"" + *pool.begin() +
                          "\"");
  }
  if (ordered.empty()) throw ValidationError("report: no models to report");
  return ordered;
}

std::vector<std::string> write_reports(
    const std::string& out_dir, const std::vector<ForecastRecord>& records,
    const std::vector<MonthlySeries>& series_set,
    const std::vector<baseline::BaselineEvent>& baseline_events,
    const ReportOptions& options) {
  if (series_set.empty()) throw ValidationError("report: no series");
  if (options.horizons.empty()) throw ValidationError("report: no horizons");
  for (int h : options.horizons) {
    if (h != 2 && h != 3) {
      throw ValidationError("report: horizons must lie in {2, 3}");
    }
  }
  std::vector<int> horizons = options.horizons;
  std::sort(horizons.begin(), horizons.end(), std::greater<int>());
  const auto models = presentation_order(options.models);

  MonthIndex last_end = series_set.front().end();
  for (const auto& s : series_set) last_end = std::max(last_end, s.end());
  std::vector<baseline::CalendarEvent> calendar;
  if (options.test_start <= last_end) {
    calendar = baseline::event_calendar(options.test_start, last_end);
  }

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  auto emit_csv = [&](const std::string& name, const csv::Table& t) {
    const std::string path = out_dir + "/" + name;
    csv::write_file(path, t);
    written.push_back(path);
  };

  std::vector<FrequencyChartData> chart_data;
  std::string notes;
  for (int h : horizons) {
    const auto panel = eval::build_scores(records, series_set,
                                          baseline_events, calendar, h,
                                          models);
    if (panel.scores.empty()) {
      throw ValidationError("report: no scorable events for h=" +
                            std::to_string(h));
    }
    const auto tables = eval::compute_tables(panel);
    const std::string suffix = "_" + std::to_string(h) + ".csv";
    emit_csv("relative" + suffix, grouped_table(tables.columns,
                                                tables.relative));
    emit_csv("ranks" + suffix, grouped_table(tables.columns, tables.ranks));
    emit_csv("frequency" + suffix,
             grouped_table(tables.columns, tables.frequency));
    emit_csv("by_category_mse" + suffix,
             by_category_table(panel, eval::MetricKind::kMse));
    emit_csv("by_category_mape" + suffix,
             by_category_table(panel, eval::MetricKind::kMape));
    emit_csv("by_category_mae" + suffix,
             by_category_table(panel, eval::MetricKind::kMae));
    chart_data.push_back(FrequencyChartData{h, tables.columns,
                                            tables.frequency});
    for (const auto& n : panel.notes) {
      notes += "h=" + std::to_string(h) + ": " + n + "\n";
    }
  }

  const std::string chart_path = out_dir + "/frequency_chart.svg";
  write_text_file(chart_path, render_frequency_chart(chart_data));
  written.push_back(chart_path);

  csv::Table census;
  census.header = {"class", "count", "avg_length", "min_length",
                   "max_length"};
  for (const auto& row :
       eval::length_census(series_set, options.thresholds)) {
    census.rows.push_back({row.klass, fmt_int(row.count),
                           format_cell(row.mean_length),
                           fmt_int(row.min_length), fmt_int(row.max_length)});
  }
  emit_csv("lengths_census.csv", census);

  const auto bins = length_bins(series_set);
  csv::Table bins_table;
  bins_table.header = {"bin_start", "bin_end", "count"};
  for (const auto& b : bins) {
    bins_table.rows.push_back({fmt_int(b.lo), fmt_int(b.hi),
                               fmt_int(b.count)});
  }
  emit_csv("lengths_bins.csv", bins_table);

  const std::string hist_path = out_dir + "/lengths_histogram.svg";
  write_text_file(hist_path, render_length_histogram(bins));
  written.push_back(hist_path);

  const std::string notes_path = out_dir + "/notes.txt";
  write_text_file(notes_path, notes);
  written.push_back(notes_path);
  return written;
}

}  // namespace semifore::report
