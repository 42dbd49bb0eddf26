#pragma once

#include <cstdint>
#include <string>

#include "aircast/error.hpp"
#include "aircast/timeutil.hpp"

namespace aircast {

// Operational schedule of the air handling unit. With the defaults
// (08:00-17:00 at 15 min, Mon-Fri) a day has 37 slots, which also fixes
// the lag-window length used everywhere downstream.
struct OperationalCalendar {
  int day_start = 8 * 60;       // minutes since midnight, inclusive
  int day_end = 17 * 60;        // inclusive
  int resolution = 15;          // minutes
  std::uint8_t working_days = 0x1f;  // bit 0 = Monday ... bit 6 = Sunday

  int slots_per_day() const { return (day_end - day_start) / resolution + 1; }

  bool is_working_day(const Date& d) const {
    return (working_days >> weekday(d)) & 1u;
  }

  bool on_grid(int minute_of_day) const {
    if (minute_of_day < day_start || minute_of_day > day_end) return false;
    return (minute_of_day - day_start) % resolution == 0;
  }

  int slot_of(int minute_of_day) const {
    return (minute_of_day - day_start) / resolution;
  }

  int minute_of(int slot) const { return day_start + slot * resolution; }

  void validate() const {
    if (day_start >= day_end)
      throw Error(Errc::config_invalid, "calendar: day_start must precede day_end");
    if (resolution <= 0 || (day_end - day_start) % resolution != 0)
      throw Error(Errc::config_invalid,
                  "calendar: resolution must divide day_end - day_start exactly");
    if (working_days == 0)
      throw Error(Errc::config_invalid, "calendar: no working days");
  }
};

}  // namespace aircast
