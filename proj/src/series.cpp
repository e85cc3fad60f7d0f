#include "semifore/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "semifore/errors.hpp"

namespace semifore {

MonthlySeries::MonthlySeries(std::string id, MonthIndex start,
                             std::vector<double> values)
    : id_(std::move(id)), start_(start), values_(std::move(values)) {
  if (id_.empty()) throw ValidationError("series id must be non-empty");
  if (values_.empty()) {
    throw ValidationError("series '" + id_ + "' has no observations");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw ValidationError("series '" + id_ + "' value at " +
                            (start_ + static_cast<int>(i)).label() +
                            " must be finite and strictly positive");
    }
  }
}

double MonthlySeries::at(MonthIndex m) const {
  if (!covers(m)) {
    throw ValidationError("series '" + id_ + "' does not cover " + m.label());
  }
  return values_[static_cast<std::size_t>(m - start_)];
}

std::optional<double> MonthlySeries::maybe_at(MonthIndex m) const {
  if (!covers(m)) return std::nullopt;
  return values_[static_cast<std::size_t>(m - start_)];
}

std::vector<double> MonthlySeries::window(MonthIndex first,
                                          MonthIndex last) const {
  if (last < first || !covers(first) || !covers(last)) {
    throw ValidationError("series '" + id_ + "' cannot provide window " +
                          first.label() + ".." + last.label());
  }
  const auto b = values_.begin() + (first - start_);
  return std::vector<double>(b, b + (last - first + 1));
}

const char* length_class_name(LengthClass c) {
  switch (c) {
    case LengthClass::kShort: return "Short";
    case LengthClass::kMedium: return "Medium";
    case LengthClass::kLong: return "Long";
  }
  return "?";
}

LengthClass classify_length(int length, const LengthThresholds& thresholds) {
  if (length <= 0) throw ValidationError("length class needs positive length");
  if (thresholds.short_max >= thresholds.medium_max) {
    throw ValidationError("length thresholds must satisfy short_max < medium_max");
  }
  if (length <= thresholds.short_max) return LengthClass::kShort;
  if (length <= thresholds.medium_max) return LengthClass::kMedium;
  return LengthClass::kLong;
}

std::vector<MonthlySeries> ingest_series(const csv::Table& table) {
  const std::size_t c_cat = table.column("category");
  const std::size_t c_year = table.column("year");
  const std::size_t c_month = table.column("month");
  const std::size_t c_value = table.column("value_musd");

  struct Row {
    MonthIndex month;
    double value;
    std::size_t row_no;  // 1-based data row, for error messages
  };
  std::vector<std::string> order;
  std::map<std::string, std::vector<Row>> grouped;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = "series row " + std::to_string(i + 1);
    const std::string& cat = row[c_cat];
    if (cat.empty()) throw ValidationError(where + ": empty category");
    const MonthIndex m = MonthIndex::from_ym(
        csv::parse_int(row[c_year], where), csv::parse_int(row[c_month], where));
    const double v = csv::parse_double(row[c_value], where);
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError(where + ": category '" + cat +
                            "' value must be strictly positive, got " +
                            row[c_value]);
    }
    if (grouped.find(cat) == grouped.end()) order.push_back(cat);
    grouped[cat].push_back(Row{m, v, i + 1});
  }

  std::vector<MonthlySeries> result;
  result.reserve(order.size());
  for (const auto& cat : order) {
    auto& rows = grouped[cat];
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.month < b.month; });
    std::vector<double> values;
    values.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0) {
        const int step = rows[i].month - rows[i - 1].month;
        if (step == 0) {
          throw ValidationError("series row " + std::to_string(rows[i].row_no) +
                                ": duplicate month " + rows[i].month.label() +
                                " for category '" + cat + "'");
        }
        if (step != 1) {
          throw ValidationError("series row " + std::to_string(rows[i].row_no) +
                                ": category '" + cat + "' has a gap between " +
                                rows[i - 1].month.label() + " and " +
                                rows[i].month.label());
        }
      }
      values.push_back(rows[i].value);
    }
    result.emplace_back(cat, rows.front().month, std::move(values));
  }
  return result;
}

std::vector<MonthlySeries> ingest_series_file(const std::string& path) {
  return ingest_series(csv::read_file(path));
}

std::vector<MergeRule> parse_merge_rules(const csv::Table& table) {
  const std::size_t c_target = table.column("target");
  const std::size_t c_source = table.column("source");
  const std::size_t c_year = table.column("effective_year");
  const std::size_t c_month = table.column("effective_month");

  std::vector<MergeRule> rules;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = "merge row " + std::to_string(i + 1);
    const std::string& target = row[c_target];
    const std::string& source = row[c_source];
    if (target.empty() || source.empty()) {
      throw ValidationError(where + ": target and source must be non-empty");
    }
    const MonthIndex eff = MonthIndex::from_ym(
        csv::parse_int(row[c_year], where), csv::parse_int(row[c_month], where));
    auto it = std::find_if(rules.begin(), rules.end(), [&](const MergeRule& r) {
      return r.target == target;
    });
    if (it == rules.end()) {
      rules.push_back(MergeRule{target, {source}, eff});
      continue;
    }
    if (it->effective_from != eff) {
      throw ValidationError(where + ": target '" + target +
                            "' has conflicting effective months");
    }
    if (std::find(it->sources.begin(), it->sources.end(), source) !=
        it->sources.end()) {
      throw ValidationError(where + ": duplicate source '" + source +
                            "' for target '" + target + "'");
    }
    it->sources.push_back(source);
  }
  return rules;
}

MonthlySeries apply_merge(const std::vector<MonthlySeries>& series_set,
                          const MergeRule& rule) {
  if (rule.sources.empty()) {
    throw ValidationError("merge rule for '" + rule.target + "' has no sources");
  }
  std::vector<const MonthlySeries*> sources;
  MonthIndex common_end = rule.effective_from;
  bool first = true;
  for (const auto& name : rule.sources) {
    auto it = std::find_if(
        series_set.begin(), series_set.end(),
        [&](const MonthlySeries& s) { return s.id() == name; });
    if (it == series_set.end()) {
      throw ValidationError("merge source '" + name + "' not found for target '" +
                            rule.target + "'");
    }
    if (it->start() > rule.effective_from || it->end() < rule.effective_from) {
      throw ValidationError("merge source '" + name + "' does not cover " +
                            rule.effective_from.label());
    }
    common_end = first ? it->end() : std::min(common_end, it->end());
    first = false;
    sources.push_back(&*it);
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(common_end - rule.effective_from + 1));
  for (MonthIndex m = rule.effective_from; m <= common_end; m = m + 1) {
    double sum = 0.0;
    for (const auto* s : sources) sum += s->at(m);
    values.push_back(sum);
  }
  return MonthlySeries(rule.target, rule.effective_from, std::move(values));
}

std::vector<MonthlySeries> apply_merges(std::vector<MonthlySeries> series_set,
                                        const std::vector<MergeRule>& rules) {
  for (const auto& rule : rules) {
    MonthlySeries merged = apply_merge(series_set, rule);
    auto existing = std::find_if(
        series_set.begin(), series_set.end(),
        [&](const MonthlySeries& s) { return s.id() == rule.target; });
    if (existing != series_set.end()) {
      if (existing->end() + 1 != merged.start()) {
        throw ValidationError(
            "merge target '" + rule.target +
            "' already exists and is not contiguous with the merged span");
      }
      std::vector<double> values = existing->values();
      values.insert(values.end(), merged.values().begin(),
                    merged.values().end());
      merged = MonthlySeries(rule.target, existing->start(), std::move(values));
      series_set.erase(existing);
    }
    series_set.erase(
        std::remove_if(series_set.begin(), series_set.end(),
                       [&](const MonthlySeries& s) {
                         return std::find(rule.sources.begin(),
                                          rule.sources.end(),
                                          s.id()) != rule.sources.end();
                       }),
        series_set.end());
    series_set.push_back(std::move(merged));
  }
  return series_set;
}

Hierarchy Hierarchy::from_table(const csv::Table& table) {
  const std::size_t c_child = table.column("child");
  const std::size_t c_parent = table.column("parent");

  Hierarchy h;
  std::set<std::string> nodes;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = "hierarchy row " + std::to_string(i + 1);
    const std::string& child = row[c_child];
    const std::string& parent = row[c_parent];
    if (child.empty() || parent.empty()) {
      throw ValidationError(where + ": child and parent must be non-empty");
    }
    if (child == parent) {
      throw ValidationError(where + ": node '" + child + "' is its own parent");
    }
    if (!h.parent_.emplace(child, parent).second) {
      throw ValidationError(where + ": node '" + child +
                            "' has more than one parent");
    }
    nodes.insert(child);
    nodes.insert(parent);
  }
  if (h.parent_.empty()) throw ValidationError("hierarchy has no edges");

  for (const auto& node : nodes) {
    if (h.parent_.find(node) == h.parent_.end()) {
      if (!h.root_.empty()) {
        throw ValidationError("hierarchy has multiple roots: '" + h.root_ +
                              "' and '" + node + "'");
      }
      h.root_ = node;
    }
  }
  if (h.root_.empty()) {
    throw ValidationError("hierarchy has no root (cycle through every node)");
  }
  // Walking up from every node must reach the root without revisiting.
  for (const auto& node : nodes) {
    std::set<std::string> seen;
    std::string cur = node;
    while (cur != h.root_) {
      if (!seen.insert(cur).second) {
        throw ValidationError("hierarchy contains a cycle through '" + node + "'");
      }
      cur = h.parent_.at(cur);
    }
  }
  return h;
}

std::optional<std::string> Hierarchy::parent_of(const std::string& node) const {
  auto it = parent_.find(node);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

bool Hierarchy::contains(const std::string& node) const {
  if (node == root_) return true;
  return parent_.find(node) != parent_.end();
}

std::size_t Hierarchy::node_count() const {
  std::set<std::string> nodes;
  nodes.insert(root_);
  for (const auto& [child, parent] : parent_) {
    nodes.insert(child);
    nodes.insert(parent);
  }
  return nodes.size();
}

}  // namespace semifore
