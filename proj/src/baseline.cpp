#include "semifore/baseline.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "semifore/errors.hpp"

namespace semifore::baseline {

const char* event_type_name(EventType t) {
  switch (t) {
    case EventType::kMeeting: return "Meeting";
    case EventType::kAlgorithmicUpdate: return "AlgorithmicUpdate";
  }
  return "?";
}

EventType parse_event_type(const std::string& text) {
  if (text == "Meeting") return EventType::kMeeting;
  if (text == "AlgorithmicUpdate") return EventType::kAlgorithmicUpdate;
  throw ValidationError("unknown event type '" + text +
                        "' (want Meeting or AlgorithmicUpdate)");
}

std::vector<CalendarEvent> event_calendar(MonthIndex first, MonthIndex last) {
  if (last < first) {
    throw ValidationError("event calendar range end precedes start");
  }
  std::vector<CalendarEvent> events;
  for (MonthIndex m = first; m <= last; m = m + 1) {
    const int month = m.month_of_year();
    EventType type;
    if (month == 5 || month == 11) {
      type = EventType::kMeeting;
    } else if (month == 2 || month == 8) {
      type = EventType::kAlgorithmicUpdate;
    } else {
      continue;
    }
    events.push_back(CalendarEvent{m, type, quarter_of(m)});
  }
  return events;
}

MonthIndex event_month_for(Quarter q, EventType type) {
  // Meeting quarters are Q2/Q4 (May, November), update quarters Q1/Q3
  // (February, August); the event month is the quarter's middle month.
  const bool meeting_quarter = (q.q == 2 || q.q == 4);
  if ((type == EventType::kMeeting) != meeting_quarter) {
    throw ValidationError("event type " + std::string(event_type_name(type)) +
                          " is impossible for quarter " + q.label());
  }
  return quarter_first_month(q) + 1;
}

std::vector<BaselineEvent> ingest_baseline(const csv::Table& table) {
  const std::size_t c_cat = table.column("category");
  const std::size_t c_year = table.column("year");
  const std::size_t c_quarter = table.column("quarter");
  const std::size_t c_type = table.column("event_type");
  const std::size_t c_value = table.column("value_musd");

  std::vector<BaselineEvent> events;
  std::set<std::tuple<std::string, int, int, int>> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = "baseline row " + std::to_string(i + 1);
    BaselineEvent e;
    e.series = row[c_cat];
    if (e.series.empty()) throw ValidationError(where + ": empty category");
    e.quarter.year = csv::parse_int(row[c_year], where);
    std::string qtext = row[c_quarter];
    if (!qtext.empty() && (qtext[0] == 'Q' || qtext[0] == 'q')) {
      qtext = qtext.substr(1);
    }
    e.quarter.q = csv::parse_int(qtext, where);
    if (e.quarter.q < 1 || e.quarter.q > 4) {
      throw ValidationError(where + ": quarter out of range 1..4");
    }
    e.type = parse_event_type(row[c_type]);
    // Rejects rows whose type is impossible for the quarter, e.g. a row
    // typed Meeting in a February-event quarter.
    try {
      event_month_for(e.quarter, e.type);
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }
    e.value_musd = csv::parse_double(row[c_value], where);
    if (!(e.value_musd > 0.0) || !std::isfinite(e.value_musd)) {
      throw ValidationError(where + ": baseline value must be positive");
    }
    if (!seen.insert({e.series, e.quarter.year, e.quarter.q,
                      static_cast<int>(e.type)})
             .second) {
      throw ValidationError(where + ": duplicate baseline event for '" +
                            e.series + "' " + e.quarter.label() + " " +
                            event_type_name(e.type));
    }
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<BaselineEvent> ingest_baseline_file(const std::string& path) {
  return ingest_baseline(csv::read_file(path));
}

csv::Table baseline_to_table(const std::vector<BaselineEvent>& events) {
  csv::Table table;
  table.header = {"category", "year", "quarter", "event_type", "value_musd"};
  for (const auto& e : events) {
    table.rows.push_back({e.series, std::to_string(e.quarter.year),
                          "Q" + std::to_string(e.quarter.q),
                          event_type_name(e.type),
                          csv::format_double(e.value_musd)});
  }
  return table;
}

}  // namespace semifore::baseline
