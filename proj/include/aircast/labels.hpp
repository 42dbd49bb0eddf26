#pragma once

#include <string>
#include <vector>

#include "aircast/calendar.hpp"

namespace aircast {

enum class FeatureKind { ambient, room_avg, asat_lag };

// Identity of one feature-vector position. `index` is fixed to the clock
// (0 = ambient, 1 = room average, 2..38 = ASAT at clock slot index-2);
// the *position* of an asat_lag within a vector rotates with the target
// slot, its index does not.
struct FeatureLabel {
  int index = 0;
  FeatureKind kind = FeatureKind::ambient;
  int clock_slot = 0;  // asat_lag only
  int day_offset = 0;  // asat_lag only: 1 = yesterday, 2 = two days back

  bool operator==(const FeatureLabel&) const = default;
};

// "f9_1D:9:45" for lags (hour unpadded), "f0:AT" / "f1:RT-avg" otherwise.
std::string render_label(const FeatureLabel& label, const OperationalCalendar& cal);

// The 39 labels of a feature vector for `target_slot`, in vector order:
// ambient, room average, then the lag window rotated so the most recent
// observation (yesterday at target_slot) comes last.
std::vector<FeatureLabel> label_sequence(int target_slot,
                                         const OperationalCalendar& cal);

// Clock-free name for position `index` when one model is shared across all
// slots: positions are recency-aligned, so index 2 is the oldest lag.
std::string pooled_label(int index, const OperationalCalendar& cal);

}  // namespace aircast
