#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semifore/calendar.hpp"
#include "semifore/csv.hpp"

namespace semifore {

// One product category's monthly history: strictly positive values on a
// contiguous month range. Immutable after construction; safe to share
// across worker threads.
class MonthlySeries {
 public:
  MonthlySeries(std::string id, MonthIndex start, std::vector<double> values);

  const std::string& id() const { return id_; }
  MonthIndex start() const { return start_; }
  MonthIndex end() const { return start_ + (static_cast<int>(values_.size()) - 1); }
  int length() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }

  bool covers(MonthIndex m) const { return m >= start() && m <= end(); }
  double at(MonthIndex m) const;  // ValidationError when out of range
  std::optional<double> maybe_at(MonthIndex m) const;

  // Values over the closed month range [first, last]; range must be covered.
  std::vector<double> window(MonthIndex first, MonthIndex last) const;

 private:
  std::string id_;
  MonthIndex start_;
  std::vector<double> values_;
};

enum class LengthClass { kShort, kMedium, kLong };

const char* length_class_name(LengthClass c);

// Class boundaries are configuration: the observed corpus pins 284 as the
// longest Short and 359 as the longest Medium, but lengths 285..295 and
// 360..391 never occur, so the defaults extend each class up to the next
// observed boundary.
struct LengthThresholds {
  int short_max = 284;
  int medium_max = 359;
};

LengthClass classify_length(int length, const LengthThresholds& thresholds = {});

// Parses `category,year,month,value_musd` rows into validated series.
// Categories keep first-appearance order; within a category rows are sorted
// by month. Nonpositive values, duplicate months, and month gaps are hard
// errors (no imputation), reported with the offending data row number.
std::vector<MonthlySeries> ingest_series(const csv::Table& table);
std::vector<MonthlySeries> ingest_series_file(const std::string& path);

// One merge instruction: target absorbs the month-wise sum of its sources
// from effective_from through the shortest common source end.
struct MergeRule {
  std::string target;
  std::vector<std::string> sources;
  MonthIndex effective_from;
};

// Parses `target,source,effective_year,effective_month` rows; rows sharing a
// target form one rule and must agree on the effective month.
std::vector<MergeRule> parse_merge_rules(const csv::Table& table);

MonthlySeries apply_merge(const std::vector<MonthlySeries>& series_set,
                          const MergeRule& rule);

// Applies every rule, removing the sources and inserting the merged target.
// A pre-existing target series is allowed only when it ends exactly one
// month before rule.effective_from; the histories are then concatenated.
std::vector<MonthlySeries> apply_merges(std::vector<MonthlySeries> series_set,
                                        const std::vector<MergeRule>& rules);

// Category tree from `child,parent` rows. Validation demands exactly one
// root, every node reachable from it, and no cycles.
class Hierarchy {
 public:
  static Hierarchy from_table(const csv::Table& table);

  const std::string& root() const { return root_; }
  std::optional<std::string> parent_of(const std::string& node) const;
  bool contains(const std::string& node) const;
  std::size_t node_count() const;

 private:
  std::map<std::string, std::string> parent_;
  std::string root_;
};

}  // namespace semifore
