#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aircast/calendar.hpp"
#include "aircast/csv.hpp"

namespace aircast {

struct SynthOptions {
  Date start{2024, 9, 2};
  int days = 30;  // working days to emit
  std::uint64_t seed = 42;
};

// Deterministic synthetic sensor feed: a smooth daily ASAT profile riding a
// slowly oscillating day level, plus weather-ish exogenous channels. Covers
// non-working days too so ingest has something to drop.
std::vector<Observation> synth_series(const SynthOptions& opts,
                                      const OperationalCalendar& cal);

// Raw export form consumed by cmd_ingest: "ts,asat,at,rt_avg".
void write_raw_csv(const std::vector<Observation>& obs, const std::string& path);

}  // namespace aircast
