#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>

namespace aircast {

// Calendar date. Timestamps carry no timezone; inputs are assumed to be
// pre-localized building wall-clock time.
struct Date {
  int year = 0;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;
};

// Days since 1970-01-01 (may be negative).
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t z);

// 0 = Monday ... 6 = Sunday.
int weekday(const Date& d);

bool valid_date(const Date& d);

Date add_days(const Date& d, std::int64_t n);

// Wall-clock timestamp at minute resolution.
struct Timestamp {
  Date date;
  int minute_of_day = 0;  // 0..1439

  auto operator<=>(const Timestamp&) const = default;
};

// "YYYY-MM-DDTHH:MM" (an optional ":SS" suffix is accepted iff SS == 00).
// Returns false on any malformed or out-of-range field.
bool parse_timestamp(std::string_view text, Timestamp& out);
bool parse_date(std::string_view text, Date& out);
// "HH:MM" -> minute of day.
bool parse_clock(std::string_view text, int& minute_out);

std::string format_date(const Date& d);
std::string format_timestamp(const Timestamp& ts);
// "8:00" / "14:45" (hour unpadded) or "08:00" when pad_hour is set.
std::string format_clock(int minute_of_day, bool pad_hour = false);

}  // namespace aircast
