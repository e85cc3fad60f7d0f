#include "semifore/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "semifore/errors.hpp"

namespace semifore::eval {

MetricTriple metrics(const std::vector<double>& actuals,
                     const std::vector<double>& forecasts) {
  if (actuals.empty() || actuals.size() != forecasts.size()) {
    throw ValidationError("metrics: need equal non-zero lengths");
  }
  MetricTriple t;
  const double n = static_cast<double>(actuals.size());
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    const double a = actuals[i];
    const double f = forecasts[i];
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ValidationError("metrics: actuals must be strictly positive");
    }
    if (!std::isfinite(f)) {
      throw ValidationError("metrics: forecast not finite");
    }
    const double e = f - a;
    t.mse += e * e;
    t.mape += std::fabs(e) / a;
    t.mae += std::fabs(e);
  }
  t.mse /= n;
  t.mape /= n;
  t.mae /= n;
  return t;
}

const char* metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::kMse: return "MSE";
    case MetricKind::kMape: return "MAPE";
    case MetricKind::kMae: return "MAE";
  }
  return "?";
}

double metric_of(const MetricTriple& t, MetricKind m) {
  switch (m) {
    case MetricKind::kMse: return t.mse;
    case MetricKind::kMape: return t.mape;
    case MetricKind::kMae: return t.mae;
  }
  return 0.0;
}

const char* event_group_name(EventGroup g) {
  switch (g) {
    case EventGroup::kAlgorithmicUpdate: return "AlgorithmicUpdate";
    case EventGroup::kMeeting: return "Meeting";
    case EventGroup::kOverall: return "Overall";
  }
  return "?";
}

bool group_includes(EventGroup g, baseline::EventType t) {
  switch (g) {
    case EventGroup::kAlgorithmicUpdate:
      return t == baseline::EventType::kAlgorithmicUpdate;
    case EventGroup::kMeeting:
      return t == baseline::EventType::kMeeting;
    case EventGroup::kOverall:
      return true;
  }
  return false;
}

std::vector<double> relative_cells(const ErrorPanel& panel,
                                   std::size_t baseline_col) {
  if (panel.categories.empty()) {
    throw ValidationError("relative_cells: empty panel");
  }
  const std::size_t m = panel.forecasters.size();
  std::vector<double> means(m, 0.0);
  for (const auto& row : panel.errors) {
    for (std::size_t j = 0; j < m; ++j) means[j] += row[j];
  }
  for (double& v : means) v /= static_cast<double>(panel.categories.size());

  const double base = means.at(baseline_col);
  std::vector<double> cells(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (base > 0.0) {
      cells[j] = means[j] / base;
    } else {
      // Perfect baseline: anything with residual error is infinitely worse.
      cells[j] = means[j] > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
  }
  cells[baseline_col] = 1.0;
  return cells;
}

std::vector<double> rank_row(const std::vector<double>& errors) {
  const std::size_t m = errors.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return errors[a] < errors[b];
  });
  std::vector<double> ranks(m, 0.0);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j + 1 < m && errors[order[j + 1]] == errors[order[i]]) ++j;
    // Tied block occupies positions i+1..j+1; every member gets the midrank.
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = midrank;
    i = j + 1;
  }
  return ranks;
}

std::vector<double> mean_rank_cells(const ErrorPanel& panel) {
  if (panel.categories.empty()) {
    throw ValidationError("mean_rank_cells: empty panel");
  }
  const std::size_t m = panel.forecasters.size();
  std::vector<double> sums(m, 0.0);
  for (const auto& row : panel.errors) {
    const auto ranks = rank_row(row);
    for (std::size_t j = 0; j < m; ++j) sums[j] += ranks[j];
  }
  for (double& v : sums) v /= static_cast<double>(panel.categories.size());
  return sums;
}

std::vector<double> best_frequency_cells(const ErrorPanel& panel) {
  if (panel.categories.empty()) {
    throw ValidationError("best_frequency_cells: empty panel");
  }
  const std::size_t m = panel.forecasters.size();
  std::vector<double> credit(m, 0.0);
  for (const auto& row : panel.errors) {
    const double best = *std::min_element(row.begin(), row.end());
    std::size_t ties = 0;
    for (double e : row) {
      if (e == best) ++ties;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] == best) credit[j] += 1.0 / static_cast<double>(ties);
    }
  }
  for (double& v : credit) v /= static_cast<double>(panel.categories.size());
  return credit;
}

RecordIndex::RecordIndex(const std::vector<ForecastRecord>& records) {
  for (const auto& r : records) {
    const std::string key = r.series + '\x1f' + r.model + '\x1f' +
                            std::to_string(r.train_end.value()) + '\x1f' +
                            std::to_string(r.target_month.value());
    by_key_.emplace(key, r);
  }
}

const ForecastRecord* RecordIndex::find(const std::string& series,
                                        const std::string& model,
                                        MonthIndex train_end,
                                        MonthIndex target) const {
  const std::string key = series + '\x1f' + model + '\x1f' +
                          std::to_string(train_end.value()) + '\x1f' +
                          std::to_string(target.value());
  auto it = by_key_.find(key);
  return it == by_key_.end() ? nullptr : &it->second;
}

double quarter_estimate(const RecordIndex& index, const MonthlySeries& actuals,
                        const baseline::CalendarEvent& event, int h,
                        const std::string& model) {
  if (h != 2 && h != 3) {
    throw ValidationError("quarter_estimate: h must be 2 or 3");
  }
  const MonthIndex m1 = quarter_first_month(event.target);
  double total = 0.0;
  if (h == 3) {
    const MonthIndex origin = m1 - 1;
    for (int k = 0; k < 3; ++k) {
      const ForecastRecord* rec = index.find(actuals.id(), model, origin, m1 + k);
      if (rec == nullptr) {
        throw FitError("missing forecast record for " + actuals.id() + "/" +
                       model + " origin " + origin.label() + " target " +
                       (m1 + k).label());
      }
      total += rec->value_musd;
    }
    return total;
  }
  const auto first_actual = actuals.maybe_at(m1);
  if (!first_actual.has_value()) {
    throw FitError("missing actual for " + actuals.id() + " at " + m1.label());
  }
  total = *first_actual;
  for (int k = 1; k < 3; ++k) {
    const ForecastRecord* rec = index.find(actuals.id(), model, m1, m1 + k);
    if (rec == nullptr) {
      throw FitError("missing forecast record for " + actuals.id() + "/" +
                     model + " origin " + m1.label() + " target " +
                     (m1 + k).label());
    }
    total += rec->value_musd;
  }
  return total;
}

ScorePanel build_scores(
    const std::vector<ForecastRecord>& records,
    const std::vector<MonthlySeries>& series_set,
    const std::vector<baseline::BaselineEvent>& baseline_events,
    const std::vector<baseline::CalendarEvent>& calendar, int h,
    const std::vector<std::string>& model_columns,
    const std::string& baseline_column) {
  ScorePanel panel;
  panel.columns.push_back(baseline_column);
  for (const auto& m : model_columns) panel.columns.push_back(m);

  const RecordIndex index(records);

  std::map<std::string, std::map<std::string, double>> baseline_by_series;
  for (const auto& e : baseline_events) {
    baseline_by_series[e.series][e.quarter.label() + "/" +
                                 baseline::event_type_name(e.type)] =
        e.value_musd;
  }

  for (const auto& series : series_set) {
    for (const auto& event : calendar) {
      QuarterScore score;
      score.category = series.id();
      score.quarter = event.target;
      score.type = event.type;

      const MonthIndex m1 = quarter_first_month(event.target);
      bool have_actuals = true;
      double actual_total = 0.0;
      for (int k = 0; k < 3; ++k) {
        const auto v = series.maybe_at(m1 + k);
        if (!v.has_value()) {
          have_actuals = false;
          break;
        }
        actual_total += *v;
      }
      if (!have_actuals) {
        panel.notes.push_back(series.id() + " " + event.target.label() + " " +
                              baseline::event_type_name(event.type) +
                              ": dropped (incomplete quarter actuals)");
        continue;
      }
      score.actual = actual_total;

      const auto series_baseline = baseline_by_series.find(series.id());
      const std::string event_key = event.target.label() + "/" +
                                    baseline::event_type_name(event.type);
      if (series_baseline == baseline_by_series.end() ||
          series_baseline->second.find(event_key) ==
              series_baseline->second.end()) {
        panel.notes.push_back(series.id() + " " + event.target.label() + " " +
                              baseline::event_type_name(event.type) +
                              ": dropped (no baseline value)");
        continue;
      }
      score.estimates.push_back(series_baseline->second.at(event_key));

      bool complete = true;
      for (const auto& model : model_columns) {
        try {
          score.estimates.push_back(
              quarter_estimate(index, series, event, h, model));
        } catch (const FitError&) {
          complete = false;
          panel.notes.push_back(series.id() + " " + event.target.label() + " " +
                                baseline::event_type_name(event.type) +
                                ": dropped (no estimate from " + model + ")");
          break;
        }
      }
      if (!complete) continue;
      panel.scores.push_back(std::move(score));
    }
  }
  return panel;
}

ErrorPanel metric_panel(const ScorePanel& panel, EventGroup group,
                        MetricKind metric) {
  ErrorPanel out;
  out.forecasters = panel.columns;

  std::vector<std::string> categories;
  std::map<std::string, std::vector<const QuarterScore*>> by_category;
  for (const auto& s : panel.scores) {
    if (!group_includes(group, s.type)) continue;
    if (by_category.find(s.category) == by_category.end()) {
      categories.push_back(s.category);
    }
    by_category[s.category].push_back(&s);
  }

  for (const auto& cat : categories) {
    const auto& scores = by_category.at(cat);
    std::vector<double> row;
    row.reserve(panel.columns.size());
    std::vector<double> actuals;
    actuals.reserve(scores.size());
    for (const auto* s : scores) actuals.push_back(s->actual);
    for (std::size_t j = 0; j < panel.columns.size(); ++j) {
      std::vector<double> estimates;
      estimates.reserve(scores.size());
      for (const auto* s : scores) estimates.push_back(s->estimates[j]);
      row.push_back(metric_of(metrics(actuals, estimates), metric));
    }
    out.categories.push_back(cat);
    out.errors.push_back(std::move(row));
  }
  return out;
}

Tables compute_tables(const ScorePanel& panel) {
  Tables tables;
  tables.columns = panel.columns;
  for (EventGroup group : kAllGroups) {
    for (MetricKind metric : kAllMetrics) {
      const ErrorPanel ep = metric_panel(panel, group, metric);
      if (ep.categories.empty()) continue;
      tables.relative.push_back({group, metric, relative_cells(ep, 0)});
      tables.ranks.push_back({group, metric, mean_rank_cells(ep)});
      tables.frequency.push_back({group, metric, best_frequency_cells(ep)});
    }
  }
  return tables;
}

std::vector<CensusRow> length_census(
    const std::vector<MonthlySeries>& series_set,
    const LengthThresholds& thresholds) {
  if (series_set.empty()) throw ValidationError("length_census: no series");
  struct Acc {
    long long total = 0;
    int count = 0;
    int min_len = std::numeric_limits<int>::max();
    int max_len = 0;
    void add(int len) {
      total += len;
      ++count;
      min_len = std::min(min_len, len);
      max_len = std::max(max_len, len);
    }
  };
  Acc per_class[3];
  Acc all;
  for (const auto& s : series_set) {
    const int len = s.length();
    per_class[static_cast<int>(classify_length(len, thresholds))].add(len);
    all.add(len);
  }
  const LengthClass order[] = {LengthClass::kLong, LengthClass::kMedium,
                               LengthClass::kShort};
  std::vector<CensusRow> rows;
  for (LengthClass c : order) {
    const Acc& a = per_class[static_cast<int>(c)];
    if (a.count == 0) continue;
    rows.push_back({length_class_name(c), a.count,
                    static_cast<double>(a.total) / a.count, a.min_len,
                    a.max_len});
  }
  rows.push_back({"All", all.count, static_cast<double>(all.total) / all.count,
                  all.min_len, all.max_len});
  return rows;
}

ScorePanel restrict_to_class(const ScorePanel& panel,
                             const std::vector<MonthlySeries>& series_set,
                             LengthClass klass,
                             const LengthThresholds& thresholds) {
  std::set<std::string> members;
  for (const auto& s : series_set) {
    if (classify_length(s.length(), thresholds) == klass) members.insert(s.id());
  }
  ScorePanel out;
  out.columns = panel.columns;
  for (const auto& s : panel.scores) {
    if (members.count(s.category) > 0) out.scores.push_back(s);
  }
  return out;
}

}  // namespace semifore::eval
