#include "semifore/calendar.hpp"

#include <cstdio>

#include "semifore/errors.hpp"

namespace semifore {

MonthIndex MonthIndex::from_ym(int year, int month, int epoch_year) {
  if (month < 1 || month > 12) {
    throw ValidationError("month out of range 1..12: " + std::to_string(month));
  }
  if (year < epoch_year) {
    throw ValidationError("year " + std::to_string(year) +
                          " precedes calendar epoch " +
                          std::to_string(epoch_year));
  }
  return MonthIndex((year - epoch_year) * 12 + (month - 1));
}

YearMonth MonthIndex::to_ym(int epoch_year) const {
  YearMonth ym;
  ym.year = epoch_year + value_ / 12;
  ym.month = value_ % 12 + 1;
  if (value_ < 0) {
    ym.year = epoch_year + (value_ - 11) / 12;
    ym.month = ((value_ % 12) + 12) % 12 + 1;
  }
  return ym;
}

std::string MonthIndex::label(int epoch_year) const {
  const YearMonth ym = to_ym(epoch_year);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
  return buf;
}

MonthIndex MonthIndex::parse_label(const std::string& text, int epoch_year) {
  int year = 0;
  int month = 0;
  if (text.size() != 7 || text[4] != '-' ||
      std::sscanf(text.c_str(), "%4d-%2d", &year, &month) != 2) {
    throw ValidationError("malformed month label (want YYYY-MM): " + text);
  }
  return from_ym(year, month, epoch_year);
}

int months_inclusive(MonthIndex first, MonthIndex last) {
  if (last < first) {
    throw ValidationError("month interval end precedes start: " +
                          last.label() + " < " + first.label());
  }
  return last - first + 1;
}

std::string Quarter::label() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04dQ%d", year, q);
  return buf;
}

Quarter quarter_of(MonthIndex m) {
  const YearMonth ym = m.to_ym();
  return Quarter{ym.year, (ym.month - 1) / 3 + 1};
}

MonthIndex quarter_first_month(Quarter q, int epoch_year) {
  if (q.q < 1 || q.q > 4) {
    throw ValidationError("quarter out of range 1..4: " + std::to_string(q.q));
  }
  return MonthIndex::from_ym(q.year, (q.q - 1) * 3 + 1, epoch_year);
}

}  // namespace semifore
