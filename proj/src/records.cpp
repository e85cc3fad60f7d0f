#include "semifore/records.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "semifore/errors.hpp"

namespace semifore {
namespace {

}  // namespace

bool record_order(const ForecastRecord& a, const ForecastRecord& b) {
  return std::tie(a.series, a.model, a.train_end, a.target_month) <
         std::tie(b.series, b.model, b.train_end, b.target_month);
}

csv::Table records_to_table(const std::vector<ForecastRecord>& records) {
  csv::Table table;
  table.header = {"series",     "model",  "train_end", "target_month",
                  "value_musd", "lambda", "hyperparams_json"};
  table.rows.reserve(records.size());
  for (const auto& r : records) {
    table.rows.push_back({r.series, r.model, r.train_end.label(),
                          r.target_month.label(), csv::format_double(r.value_musd),
                          csv::format_double(r.lambda), r.hyperparams_json});
  }
  return table;
}

std::vector<ForecastRecord> records_from_table(const csv::Table& table) {
  const std::size_t c_series = table.column("series");
  const std::size_t c_model = table.column("model");
  const std::size_t c_train = table.column("train_end");
  const std::size_t c_target = table.column("target_month");
  const std::size_t c_value = table.column("value_musd");
  const std::size_t c_lambda = table.column("lambda");
  const std::size_t c_hp = table.column("hyperparams_json");

  std::vector<ForecastRecord> records;
  records.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = "forecast row " + std::to_string(i + 1);
    ForecastRecord r;
    r.series = row[c_series];
    r.model = row[c_model];
    r.train_end = MonthIndex::parse_label(row[c_train]);
    r.target_month = MonthIndex::parse_label(row[c_target]);
    r.value_musd = csv::parse_double(row[c_value], where);
    r.lambda = csv::parse_double(row[c_lambda], where);
    r.hyperparams_json = row[c_hp];
    if (r.series.empty() || r.model.empty()) {
      throw ValidationError(where + ": series and model must be non-empty");
    }
    if (!(r.value_musd > 0.0) || !std::isfinite(r.value_musd)) {
      throw ValidationError(where + ": forecast value must be positive");
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_records_file(const std::string& path,
                        const std::vector<ForecastRecord>& records) {
  csv::write_file(path, records_to_table(records));
}

std::vector<ForecastRecord> read_records_file(const std::string& path) {
  return records_from_table(csv::read_file(path));
}

}  // namespace semifore
