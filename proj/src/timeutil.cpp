#include "aircast/timeutil.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace aircast {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[m - 1];
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

// Howard Hinnant's civil-from-days / days-from-civil algorithms.
std::int64_t days_from_civil(const Date& d) {
  std::int64_t y = d.year;
  const int m = d.month;
  const int day = d.day;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned day = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
              static_cast<int>(day)};
}

int weekday(const Date& d) {
  // days_from_civil(1970-01-01) == 0, a Thursday.
  std::int64_t z = days_from_civil(d);
  return static_cast<int>(((z % 7) + 10) % 7);
}

bool valid_date(const Date& d) {
  if (d.year < 1 || d.year > 9999) return false;
  if (d.month < 1 || d.month > 12) return false;
  return d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

Date add_days(const Date& d, std::int64_t n) {
  return civil_from_days(days_from_civil(d) + n);
}

bool parse_date(std::string_view text, Date& out) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  Date d;
  if (!parse_int(text.substr(0, 4), d.year)) return false;
  if (!parse_int(text.substr(5, 2), d.month)) return false;
  if (!parse_int(text.substr(8, 2), d.day)) return false;
  if (!valid_date(d)) return false;
  out = d;
  return true;
}

bool parse_clock(std::string_view text, int& minute_out) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2) return false;
  if (text.size() != colon + 3) return false;
  int h = 0, m = 0;
  if (!parse_int(text.substr(0, colon), h)) return false;
  if (!parse_int(text.substr(colon + 1, 2), m)) return false;
  if (h < 0 || h > 23 || m < 0 || m > 59) return false;
  minute_out = h * 60 + m;
  return true;
}

bool parse_timestamp(std::string_view text, Timestamp& out) {
  if (text.size() < 16 || text[10] != 'T') return false;
  Timestamp ts;
  if (!parse_date(text.substr(0, 10), ts.date)) return false;
  if (text[13] != ':') return false;
  int h = 0, m = 0;
  if (!parse_int(text.substr(11, 2), h)) return false;
  if (!parse_int(text.substr(14, 2), m)) return false;
  if (h < 0 || h > 23 || m < 0 || m > 59) return false;
  if (text.size() > 16) {
    // Tolerate an explicit ":00" seconds field, nothing else.
    if (text.substr(16) != ":00") return false;
  }
  ts.minute_of_day = h * 60 + m;
  out = ts;
  return true;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::string format_timestamp(const Timestamp& ts) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", ts.date.year,
                ts.date.month, ts.date.day, ts.minute_of_day / 60,
                ts.minute_of_day % 60);
  return buf;
}

std::string format_clock(int minute_of_day, bool pad_hour) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), pad_hour ? "%02d:%02d" : "%d:%02d",
                minute_of_day / 60, minute_of_day % 60);
  return buf;
}

}  // namespace aircast
