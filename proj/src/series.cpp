#include "aircast/series.hpp"

#include <charconv>
#include <fstream>

#include "aircast/error.hpp"
#include "aircast/textio.hpp"

namespace aircast {

int RegularSeries::day_index(const Date& d) const {
  for (std::size_t i = 0; i < days.size(); ++i) {
    if (days[i] == d) return static_cast<int>(i);
  }
  return -1;
}

std::vector<Observation> filter_operational(const std::vector<Observation>& obs,
                                            const OperationalCalendar& cal) {
  std::vector<Observation> out;
  out.reserve(obs.size());
  for (const Observation& o : obs) {
    if (!cal.is_working_day(o.ts.date)) continue;
    if (!cal.on_grid(o.ts.minute_of_day)) continue;
    out.push_back(o);
  }
  return out;
}

RegularSeries regularize(const std::vector<Observation>& obs,
                         const OperationalCalendar& cal, int max_fill) {
  if (obs.empty()) {
    throw Error(Errc::empty_input, "no observations to regularize");
  }
  const int n_slots = cal.slots_per_day();

  RegularSeries series;
  series.cal = cal;

  std::size_t i = 0;
  while (i < obs.size()) {
    const Date day = obs[i].ts.date;
    // Collect this day's observations into their slots.
    std::vector<Observation> slots(n_slots);
    std::vector<std::uint8_t> present(n_slots, 0);
    while (i < obs.size() && obs[i].ts.date == day) {
      const Observation& o = obs[i];
      if (!cal.is_working_day(day) || !cal.on_grid(o.ts.minute_of_day)) {
        throw Error(Errc::slot_out_of_range,
                    "observation at " + format_timestamp(o.ts) +
                        " is outside the operational grid");
      }
      const int s = cal.slot_of(o.ts.minute_of_day);
      if (present[s]) {
        throw Error(Errc::duplicate_timestamp,
                    "duplicate timestamp " + format_timestamp(o.ts));
      }
      slots[s] = o;
      present[s] = 1;
      ++i;
    }

    // Fill gaps. Runs at the day start have nothing to fill from; longer
    // runs would fabricate half an hour and more of flat readings.
    std::vector<std::uint8_t> flags(n_slots, 0);
    int s = 0;
    while (s < n_slots) {
      if (present[s]) {
        ++s;
        continue;
      }
      int run = 0;
      while (s + run < n_slots && !present[s + run]) ++run;
      if (s == 0 || run > max_fill) {
        throw Error(Errc::gap_too_large,
                    "day " + format_date(day) + ": " + std::to_string(run) +
                        " missing slot(s) starting at slot " + std::to_string(s) +
                        " (" + format_clock(cal.minute_of(s), true) + ")");
      }
      for (int k = 0; k < run; ++k) {
        slots[s + k] = slots[s - 1];
        slots[s + k].ts.minute_of_day = cal.minute_of(s + k);
        flags[s + k] = 1;
      }
      s += run;
    }

    series.days.push_back(day);
    series.values.push_back(std::move(slots));
    series.imputed.push_back(std::move(flags));
  }
  return series;
}

void write_series_csv(const RegularSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_error, "cannot write '" + path + "'");
  }
  out << "ts,asat,at,rt_avg,imputed\n";
  for (int d = 0; d < series.n_days(); ++d) {
    for (std::size_t s = 0; s < series.values[d].size(); ++s) {
      const Observation& o = series.values[d][s];
      out << format_timestamp(o.ts) << ',' << fmt_shortest(o.asat) << ','
          << fmt_shortest(o.ambient) << ',' << fmt_shortest(o.room_avg) << ','
          << int(series.imputed[d][s]) << '\n';
    }
  }
  if (!out) {
    throw Error(Errc::io_error, "write failed for '" + path + "'");
  }
}

RegularSeries read_series_csv(const std::string& path,
                              const OperationalCalendar& cal) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::empty_input, "series file '" + path + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "ts,asat,at,rt_avg,imputed") {
    throw Error(Errc::missing_column,
                "series file '" + path + "' has unexpected header '" + line + "'");
  }

  const int n_slots = cal.slots_per_day();
  RegularSeries series;
  series.cal = cal;
  long row_no = 0;
  int expected_slot = 0;
  auto parse_num = [&](const std::string& cell, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw Error(Errc::non_numeric_value, "row " + std::to_string(row_no) +
                                               ": bad " + what + " '" + cell + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 5) {
      throw Error(Errc::missing_column,
                  "row " + std::to_string(row_no) + ": expected 5 columns");
    }
    Observation o;
    if (!parse_timestamp(cells[0], o.ts)) {
      throw Error(Errc::malformed_timestamp,
                  "row " + std::to_string(row_no) + ": bad timestamp '" + cells[0] + "'");
    }
    o.asat = parse_num(cells[1], "asat");
    o.ambient = parse_num(cells[2], "at");
    o.room_avg = parse_num(cells[3], "rt_avg");
    const std::uint8_t flag = cells[4] == "1" ? 1 : 0;
    if (cells[4] != "0" && cells[4] != "1") {
      throw Error(Errc::non_numeric_value,
                  "row " + std::to_string(row_no) + ": bad imputed flag '" + cells[4] + "'");
    }

    if (!cal.is_working_day(o.ts.date) || !cal.on_grid(o.ts.minute_of_day) ||
        cal.slot_of(o.ts.minute_of_day) != expected_slot) {
      throw Error(Errc::gap_too_large,
                  "row " + std::to_string(row_no) + ": series file '" + path +
                      "' is not slot-complete at " + format_timestamp(o.ts));
    }
    if (expected_slot == 0) {
      if (!series.days.empty() && !(series.days.back() < o.ts.date)) {
        throw Error(Errc::gap_too_large,
                    "row " + std::to_string(row_no) + ": days out of order");
      }
      series.days.push_back(o.ts.date);
      series.values.emplace_back();
      series.values.back().reserve(n_slots);
      series.imputed.emplace_back();
      series.imputed.back().reserve(n_slots);
    } else if (o.ts.date != series.days.back()) {
      throw Error(Errc::gap_too_large,
                  "row " + std::to_string(row_no) + ": day " +
                      format_date(series.days.back()) + " is incomplete");
    }
    series.values.back().push_back(o);
    series.imputed.back().push_back(flag);
    expected_slot = (expected_slot + 1) % n_slots;
  }
  if (series.days.empty()) {
    throw Error(Errc::empty_input, "series file '" + path + "' has no data rows");
  }
  if (expected_slot != 0) {
    throw Error(Errc::gap_too_large,
                "series file '" + path + "': last day " +
                    format_date(series.days.back()) + " is incomplete");
  }
  return series;
}

}  // namespace aircast
