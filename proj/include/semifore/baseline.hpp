#pragma once

#include <string>
#include <vector>

#include "semifore/calendar.hpp"
#include "semifore/csv.hpp"

namespace semifore::baseline {

enum class EventType { kMeeting, kAlgorithmicUpdate };

const char* event_type_name(EventType t);
EventType parse_event_type(const std::string& text);

// One entry of the biannual industry forecast calendar. Expert meetings
// publish in May and November, algorithmic updates in February and August;
// each event targets the quarter containing its own month (the event lands
// mid-quarter).
struct CalendarEvent {
  MonthIndex event_month;
  EventType type = EventType::kMeeting;
  Quarter target;
};

// Every Feb/May/Aug/Nov inside [first, last] produces one event. Any twelve
// consecutive months therefore hold exactly two of each type.
std::vector<CalendarEvent> event_calendar(MonthIndex first, MonthIndex last);

// External quarterly forecast for one category, interpreted as the quarter
// sum of monthly sales (million USD).
struct BaselineEvent {
  std::string series;
  Quarter quarter;
  EventType type = EventType::kMeeting;
  double value_musd = 0.0;
};

// Parses `category,year,quarter,event_type,value_musd`. The event type must
// match the calendar rule for its quarter (Meeting events fall in Q2/Q4,
// AlgorithmicUpdate in Q1/Q3) and (series, quarter, type) must be unique.
std::vector<BaselineEvent> ingest_baseline(const csv::Table& table);
std::vector<BaselineEvent> ingest_baseline_file(const std::string& path);

csv::Table baseline_to_table(const std::vector<BaselineEvent>& events);

// Month the forecast for this quarter/type was issued.
MonthIndex event_month_for(Quarter q, EventType type);

}  // namespace semifore::baseline
