#pragma once

#include <string>
#include <vector>

#include "semifore/calendar.hpp"
#include "semifore/csv.hpp"

namespace semifore {

// One back-transformed point forecast: model `model` fitted on data through
// `train_end` predicting `target_month`. `lambda` is the Box-Cox parameter
// of the training window; `hyperparams_json` echoes the winning
// configuration for audit.
struct ForecastRecord {
  std::string series;
  std::string model;
  MonthIndex train_end;
  MonthIndex target_month;
  double value_musd = 0.0;
  double lambda = 1.0;
  std::string hyperparams_json;
};

// Canonical order: (series, model, train_end, target_month). Forecast CSVs
// are always emitted in this order so equal runs are byte-identical.
bool record_order(const ForecastRecord& a, const ForecastRecord& b);

csv::Table records_to_table(const std::vector<ForecastRecord>& records);
std::vector<ForecastRecord> records_from_table(const csv::Table& table);

void write_records_file(const std::string& path,
                        const std::vector<ForecastRecord>& records);
std::vector<ForecastRecord> read_records_file(const std::string& path);

}  // namespace semifore
