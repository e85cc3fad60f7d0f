#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "semifore/baseline.hpp"
#include "semifore/csv.hpp"
#include "semifore/errors.hpp"

using namespace semifore;
using namespace semifore::baseline;

TEST_CASE("event counts over the study range") {
  const auto events = event_calendar(MonthIndex::from_ym(2018, 1),
                                     MonthIndex::from_ym(2023, 8));
  const auto meetings =
      std::count_if(events.begin(), events.end(), [](const CalendarEvent& e) {
        return e.type == EventType::kMeeting;
      });
  const auto updates =
      std::count_if(events.begin(), events.end(), [](const CalendarEvent& e) {
        return e.type == EventType::kAlgorithmicUpdate;
      });
  CHECK(meetings == 11);
  CHECK(updates == 12);
  CHECK(events.size() == 23);
  CHECK(std::is_sorted(events.begin(), events.end(),
                       [](const CalendarEvent& a, const CalendarEvent& b) {
                         return a.event_month < b.event_month;
                       }));
}

TEST_CASE("single month range") {
  const auto events = event_calendar(MonthIndex::from_ym(2024, 2),
                                     MonthIndex::from_ym(2024, 2));
  REQUIRE(events.size() == 1);
  CHECK(events[0].type == EventType::kAlgorithmicUpdate);
  CHECK(events[0].target.year == 2024);
  CHECK(events[0].target.q == 1);
  CHECK(events[0].event_month == MonthIndex::from_ym(2024, 2));
}

TEST_CASE("range without event months is empty") {
  CHECK(event_calendar(MonthIndex::from_ym(2018, 3),
                       MonthIndex::from_ym(2018, 4))
            .empty());
}

TEST_CASE("every 12 consecutive months hold two of each type") {
  for (int y = 2015; y <= 2022; ++y) {
    for (int m = 1; m <= 12; ++m) {
      const auto start = MonthIndex::from_ym(y, m);
      const auto events = event_calendar(start, start + 11);
      REQUIRE(events.size() == 4);
      const auto meetings = std::count_if(
          events.begin(), events.end(), [](const CalendarEvent& e) {
            return e.type == EventType::kMeeting;
          });
      CHECK(meetings == 2);
    }
  }
}

TEST_CASE("event months and targets") {
  // Second and fourth quarter events are meetings held in the middle month.
  CHECK(event_month_for({2018, 2}, EventType::kMeeting) ==
        MonthIndex::from_ym(2018, 5));
  CHECK(event_month_for({2018, 4}, EventType::kMeeting) ==
        MonthIndex::from_ym(2018, 11));
  CHECK(event_month_for({2018, 1}, EventType::kAlgorithmicUpdate) ==
        MonthIndex::from_ym(2018, 2));
  CHECK(event_month_for({2018, 3}, EventType::kAlgorithmicUpdate) ==
        MonthIndex::from_ym(2018, 8));
  CHECK_THROWS_AS(event_month_for({2018, 1}, EventType::kMeeting),
                  ValidationError);
  CHECK_THROWS_AS(event_month_for({2018, 2}, EventType::kAlgorithmicUpdate),
                  ValidationError);
}

TEST_CASE("baseline ingest accepts a plain row") {
  const auto table = csv::read_string(
      "category,year,quarter,event_type,value_musd\n"
      "T99,2018,Q2,Meeting,120000\n");
  const auto events = ingest_baseline(table);
  REQUIRE(events.size() == 1);
  CHECK(events[0].series == "T99");
  CHECK(events[0].quarter.year == 2018);
  CHECK(events[0].quarter.q == 2);
  CHECK(events[0].type == EventType::kMeeting);
  CHECK(events[0].value_musd == doctest::Approx(120000.0));
}

TEST_CASE("baseline ingest accepts bare quarter digits") {
  const auto table = csv::read_string(
      "category,year,quarter,event_type,value_musd\n"
      "T99,2019,3,AlgorithmicUpdate,98000.5\n");
  const auto events = ingest_baseline(table);
  REQUIRE(events.size() == 1);
  CHECK(events[0].quarter.q == 3);
}

TEST_CASE("baseline ingest validation") {
  // A meeting cannot publish for a first quarter.
  CHECK_THROWS_AS(
      ingest_baseline(csv::read_string(
          "category,year,quarter,event_type,value_musd\n"
          "T99,2018,Q1,Meeting,120000\n")),
      ValidationError);
  CHECK_THROWS_AS(
      ingest_baseline(csv::read_string(
          "category,year,quarter,event_type,value_musd\n"
          "T99,2018,Q2,Meeting,120000\n"
          "T99,2018,Q2,Meeting,130000\n")),
      ValidationError);
  CHECK_THROWS_AS(
      ingest_baseline(csv::read_string(
          "category,year,quarter,event_type,value_musd\n"
          "T99,2018,Q2,Meeting,-5\n")),
      ValidationError);
  CHECK_THROWS_AS(
      ingest_baseline(csv::read_string(
          "category,year,quarter,event_type,value_musd\n"
          "T99,2018,Q5,Meeting,12\n")),
      ValidationError);
  CHECK_THROWS_AS(
      ingest_baseline(csv::read_string(
          "category,year,quarter,event_type,value_musd\n"
          "T99,2018,Q2,Gathering,12\n")),
      ValidationError);
}

TEST_CASE("baseline round trip") {
  const auto table = csv::read_string(
      "category,year,quarter,event_type,value_musd\n"
      "T01,2020,Q2,Meeting,41250.25\n"
      "T01,2020,Q3,AlgorithmicUpdate,9000\n");
  const auto events = ingest_baseline(table);
  const auto back = ingest_baseline(baseline_to_table(events));
  REQUIRE(back.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(back[i].series == events[i].series);
    CHECK(back[i].quarter.year == events[i].quarter.year);
    CHECK(back[i].quarter.q == events[i].quarter.q);
    CHECK(back[i].type == events[i].type);
    CHECK(back[i].value_musd == doctest::Approx(events[i].value_musd));
  }
}
