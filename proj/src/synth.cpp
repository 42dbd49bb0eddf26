#include "aircast/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "aircast/error.hpp"
#include "aircast/rng.hpp"

namespace aircast {

std::vector<Observation> synth_series(const SynthOptions& opts,
                                      const OperationalCalendar& cal) {
  constexpr double pi = 3.14159265358979323846;
  const int n_slots = cal.slots_per_day();
  RngStream rng(opts.seed);

  std::vector<Observation> out;
  out.reserve(static_cast<std::size_t>(opts.days) * n_slots);

  Date cursor = opts.start;
  int op_day = 0;     // working-day counter; drives the day-level dynamics
  double ar = 0.0;    // small persistent disturbance on top of the cycle
  double level = 0.0;
  while (op_day < opts.days) {
    const bool working = cal.is_working_day(cursor);
    if (working) {
      ar = 0.85 * ar + rng.gaussian(0.0, 0.08);
      level = 1.2 * std::sin(2.0 * pi * op_day / 18.0) + ar;
      ++op_day;
    }
    // Non-working days reuse the last level; they are emitted only so the
    // operational filter has rows to discard.
    const int doy = static_cast<int>(days_from_civil(cursor) % 365);
    for (int s = 0; s < n_slots; ++s) {
      const double shape = std::sin(pi * s / std::max(1, n_slots - 1));
      Observation o;
      o.ts.date = cursor;
      o.ts.minute_of_day = cal.minute_of(s);
      o.ambient = 8.0 + 4.0 * std::sin(2.0 * pi * doy / 365.0) + 2.0 * shape +
                  rng.gaussian(0.0, 1.0);
      o.room_avg = 21.0 + 0.3 * level + rng.gaussian(0.0, 0.2);
      o.asat = 18.0 + level + 1.2 * shape + rng.gaussian(0.0, 0.4);
      out.push_back(o);
    }
    cursor = add_days(cursor, 1);
  }
  return out;
}

void write_raw_csv(const std::vector<Observation>& obs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_error, "cannot write '" + path + "'");
  }
  out << "ts,asat,at,rt_avg\n";
  char buf[96];
  for (const Observation& o : obs) {
    std::snprintf(buf, sizeof(buf), ",%.3f,%.3f,%.3f\n", o.asat, o.ambient, o.room_avg);
    out << format_timestamp(o.ts) << buf;
  }
  if (!out) {
    throw Error(Errc::io_error, "write failed for '" + path + "'");
  }
}

}  // namespace aircast
