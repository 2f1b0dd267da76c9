#include "echelon/date.hpp"

#include <array>
#include <cstdio>

#include "echelon/errors.hpp"

namespace echelon {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                               31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[static_cast<std::size_t>(m - 1)];
}

}  // namespace

Date parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-')
    throw ParseError("bad date '" + std::string(s) + "', expected YYYY-MM-DD");
  auto digits = [&](std::size_t from, std::size_t len) {
    int v = 0;
    for (std::size_t i = from; i < from + len; ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("bad date '" + std::string(s) +
                         "', expected YYYY-MM-DD");
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  Date d{digits(0, 4), digits(5, 2), digits(8, 2)};
  if (d.year < 1 || d.month < 1 || d.month > 12 || d.day < 1 ||
      d.day > days_in_month(d.year, d.month))
    throw ParseError("impossible date '" + std::string(s) + "'");
  return d;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

// Civil-from-days / days-from-civil per Howard Hinnant's public-domain
// calendrical algorithms.
long to_serial(const Date& d) {
  int y = d.year;
  const unsigned m = static_cast<unsigned>(d.month);
  const unsigned dd = static_cast<unsigned>(d.day);
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + dd - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

Date from_serial(long days) {
  days += 719468;
  const long era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long y = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned dd = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
              static_cast<int>(dd)};
}

int weekday(const Date& d) {
  const long s = to_serial(d);
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  return static_cast<int>(((s % 7) + 7 + 3) % 7);
}

bool is_weekend(const Date& d) { return weekday(d) >= 5; }

Date next_trading_day(const Date& d) {
  Date n = from_serial(to_serial(d) + 1);
  while (is_weekend(n)) n = from_serial(to_serial(n) + 1);
  return n;
}

std::string quarter_of(const Date& d) {
  const int q = (d.month - 1) / 3 + 1;
  return std::to_string(d.year) + "Q" + std::to_string(q);
}

}  // namespace echelon
