#pragma once

#include <compare>
#include <string>

namespace semifore {

struct YearMonth {
  int year = 0;
  int month = 0;  // 1..12
};

// Month counter anchored at 1991-01 == 0. All window arithmetic in the
// engine runs on this index, never on (year, month) pairs, so off-by-one
// month bugs stay confined to the two conversion functions below.
class MonthIndex {
 public:
  static constexpr int kEpochYear = 1991;

  MonthIndex() = default;
  explicit constexpr MonthIndex(int value) : value_(value) {}

  // Throws ValidationError when month is outside 1..12 or the date lies
  // before the epoch.
  static MonthIndex from_ym(int year, int month, int epoch_year = kEpochYear);

  YearMonth to_ym(int epoch_year = kEpochYear) const;

  // "1997-03" style label used across all CSV surfaces.
  std::string label(int epoch_year = kEpochYear) const;
  static MonthIndex parse_label(const std::string& text,
                                int epoch_year = kEpochYear);

  constexpr int value() const { return value_; }
  constexpr int month_of_year() const {
    return ((value_ % 12) + 12) % 12 + 1;
  }

  constexpr MonthIndex operator+(int months) const {
    return MonthIndex(value_ + months);
  }
  constexpr MonthIndex operator-(int months) const {
    return MonthIndex(value_ - months);
  }
  constexpr int operator-(MonthIndex other) const {
    return value_ - other.value_;
  }
  auto operator<=>(const MonthIndex&) const = default;

 private:
  int value_ = 0;
};

// Number of months in the closed interval [first, last]; throws
// ValidationError when last precedes first.
int months_inclusive(MonthIndex first, MonthIndex last);

struct Quarter {
  int year = 0;
  int q = 0;  // 1..4

  auto operator<=>(const Quarter&) const = default;
  std::string label() const;  // "2018Q1"
};

Quarter quarter_of(MonthIndex m);
// First calendar month of the quarter (m1); the other two follow.
MonthIndex quarter_first_month(Quarter q, int epoch_year = MonthIndex::kEpochYear);

}  // namespace semifore
