#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace echelon {

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;
  auto operator<=>(const Date&) const = default;
  bool is_set() const { return year != 0; }
};

// Parses "YYYY-MM-DD"; throws ParseError on malformed or impossible dates.
Date parse_date(std::string_view s);
std::string format_date(const Date& d);

// Days since 1970-01-01 (proleptic Gregorian).
long to_serial(const Date& d);
Date from_serial(long days);

// 0 = Monday .. 6 = Sunday.
int weekday(const Date& d);
bool is_weekend(const Date& d);

// Next calendar day that is not a Saturday or Sunday.
Date next_trading_day(const Date& d);

// "2016Q2" style label from the calendar quarter of d.
std::string quarter_of(const Date& d);

}  // namespace echelon
