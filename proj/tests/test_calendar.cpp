#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semifore/calendar.hpp"
#include "semifore/errors.hpp"

using namespace semifore;

TEST_CASE("epoch month maps to zero") {
  CHECK(MonthIndex::from_ym(1991, 1).value() == 0);
  CHECK(MonthIndex::from_ym(1991, 12).value() == 11);
  CHECK(MonthIndex::from_ym(1992, 1).value() == 12);
}

TEST_CASE("index and year-month round-trip across three decades") {
  for (int year = 1991; year <= 2100; ++year) {
    for (int month = 1; month <= 12; ++month) {
      const MonthIndex m = MonthIndex::from_ym(year, month);
      const YearMonth ym = m.to_ym();
      CHECK(ym.year == year);
      CHECK(ym.month == month);
    }
  }
}

TEST_CASE("corpus spans have the expected month counts") {
  CHECK(months_inclusive(MonthIndex::from_ym(1991, 1),
                         MonthIndex::from_ym(2023, 8)) == 392);
  CHECK(months_inclusive(MonthIndex::from_ym(2016, 1),
                         MonthIndex::from_ym(2023, 8)) == 92);
  CHECK(months_inclusive(MonthIndex::from_ym(2018, 1),
                         MonthIndex::from_ym(2023, 8)) == 68);
}

TEST_CASE("test span fraction of the full history") {
  const double fraction = 68.0 / 392.0;
  CHECK(fraction * 100.0 == doctest::Approx(17.4).epsilon(0.003));
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(MonthIndex::from_ym(1991, 0), ValidationError);
  CHECK_THROWS_AS(MonthIndex::from_ym(1991, 13), ValidationError);
  CHECK_THROWS_AS(MonthIndex::from_ym(1990, 5), ValidationError);
  CHECK_THROWS_AS(months_inclusive(MonthIndex(5), MonthIndex(4)),
                  ValidationError);
}

TEST_CASE("labels format and parse") {
  const MonthIndex m = MonthIndex::from_ym(1997, 3);
  CHECK(m.label() == "1997-03");
  CHECK(MonthIndex::parse_label("1997-03") == m);
  CHECK_THROWS_AS(MonthIndex::parse_label("1997/03"), ValidationError);
  CHECK_THROWS_AS(MonthIndex::parse_label("97-03"), ValidationError);
}

TEST_CASE("quarters contain their months") {
  const MonthIndex feb = MonthIndex::from_ym(2024, 2);
  CHECK(quarter_of(feb) == Quarter{2024, 1});
  CHECK(quarter_of(MonthIndex::from_ym(2024, 12)) == Quarter{2024, 4});
  CHECK(quarter_first_month(Quarter{2024, 3}) == MonthIndex::from_ym(2024, 7));
  CHECK(Quarter{2018, 2}.label() == "2018Q2");
}

TEST_CASE("month arithmetic matches offsets") {
  const MonthIndex m = MonthIndex::from_ym(2017, 12);
  CHECK((m + 1).label() == "2018-01");
  CHECK((m - 12).label() == "2016-12");
  CHECK(m + 3 - m == 3);
  CHECK(m.month_of_year() == 12);
  CHECK((m + 1).month_of_year() == 1);
}
