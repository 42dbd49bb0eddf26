#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aircast/calendar.hpp"
#include "aircast/csv.hpp"

namespace aircast {

// Gap-free operational series: for every covered day, exactly one
// observation per calendar slot, with forward-filled slots flagged.
struct RegularSeries {
  OperationalCalendar cal;
  std::vector<Date> days;                        // ascending
  std::vector<std::vector<Observation>> values;  // [day][slot], slots_per_day each
  std::vector<std::vector<std::uint8_t>> imputed;

  int n_days() const { return static_cast<int>(days.size()); }
  // Index of `d` in days, or -1.
  int day_index(const Date& d) const;
  double asat(int day, int slot) const { return values[day][slot].asat; }
};

// Keep only observations on the calendar grid within operational hours on
// working days. Order preserved; result may be empty. Idempotent.
std::vector<Observation> filter_operational(const std::vector<Observation>& obs,
                                            const OperationalCalendar& cal);

// Build a RegularSeries from operational-filtered observations. Gaps of up
// to max_fill consecutive slots are forward-filled from the previous slot
// and flagged; the first slot of a day cannot be filled. Days absent from
// the input are simply not covered.
RegularSeries regularize(const std::vector<Observation>& obs,
                         const OperationalCalendar& cal, int max_fill = 2);

// Canonical on-disk form: "ts,asat,at,rt_avg,imputed", one row per slot,
// values as shortest round-trip decimals so re-reading is bit-exact.
void write_series_csv(const RegularSeries& series, const std::string& path);
RegularSeries read_series_csv(const std::string& path,
                              const OperationalCalendar& cal);

}  // namespace aircast
