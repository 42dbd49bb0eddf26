#include "aircast/labels.hpp"

#include "aircast/error.hpp"

namespace aircast {

std::string render_label(const FeatureLabel& label, const OperationalCalendar& cal) {
  switch (label.kind) {
    case FeatureKind::ambient:
      return "f" + std::to_string(label.index) + ":AT";
    case FeatureKind::room_avg:
      return "f" + std::to_string(label.index) + ":RT-avg";
    case FeatureKind::asat_lag:
      return "f" + std::to_string(label.index) + "_" +
             std::to_string(label.day_offset) +
             "D:" + format_clock(cal.minute_of(label.clock_slot));
  }
  return {};
}

std::vector<FeatureLabel> label_sequence(int target_slot,
                                         const OperationalCalendar& cal) {
  const int n_slots = cal.slots_per_day();
  if (target_slot < 0 || target_slot >= n_slots) {
    throw Error(Errc::slot_out_of_range,
                "target_slot " + std::to_string(target_slot) + " not in [0, " +
                    std::to_string(n_slots - 1) + "]");
  }
  std::vector<FeatureLabel> labels;
  labels.reserve(2 + n_slots);
  labels.push_back({0, FeatureKind::ambient, 0, 0});
  labels.push_back({1, FeatureKind::room_avg, 0, 0});
  // Two-day window ending at (yesterday, target_slot), oldest first: slots
  // after the target slot come from two days back, the rest from yesterday.
  for (int s = target_slot + 1; s < n_slots; ++s) {
    labels.push_back({s + 2, FeatureKind::asat_lag, s, 2});
  }
  for (int s = 0; s <= target_slot; ++s) {
    labels.push_back({s + 2, FeatureKind::asat_lag, s, 1});
  }
  return labels;
}

std::string pooled_label(int index, const OperationalCalendar& cal) {
  if (index == 0) return "f0:AT";
  if (index == 1) return "f1:RT-avg";
  const int n_slots = cal.slots_per_day();
  // Lag distance in slots: last position is the most recent observation.
  const int lag = n_slots + 2 - index;
  return "f" + std::to_string(index) + ":lag-" + std::to_string(lag);
}

}  // namespace aircast
