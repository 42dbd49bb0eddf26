#include "aircast/windowing.hpp"

#include <algorithm>

#include "aircast/error.hpp"
#include "aircast/textio.hpp"

namespace aircast {

FeatureVector build_feature_vector(const RegularSeries& series, const Date& target_day,
                                   int target_slot, const OperationalCalendar& cal) {
  const int n_slots = cal.slots_per_day();
  if (target_slot < 0 || target_slot >= n_slots) {
    throw Error(Errc::slot_out_of_range,
                "target_slot " + std::to_string(target_slot) + " not in [0, " +
                    std::to_string(n_slots - 1) + "]");
  }
  // The two series days immediately before the target day.
  const auto it = std::lower_bound(series.days.begin(), series.days.end(), target_day);
  const int n_before = static_cast<int>(it - series.days.begin());
  if (n_before < 1) {
    throw Error(Errc::missing_day,
                "no day before " + format_date(target_day) + " in series");
  }
  if (n_before < 2) {
    throw Error(Errc::missing_day,
                "only one day before " + format_date(target_day) + " in series");
  }
  const int d1 = n_before - 1;  // yesterday
  const int d2 = n_before - 2;  // two days back

  FeatureVector fv;
  fv.target_day = target_day;
  fv.target_slot = target_slot;
  fv.labels = label_sequence(target_slot, cal);
  fv.values.resize(2 + n_slots);
  fv.values[0] = series.values[d1][target_slot].ambient;
  fv.values[1] = series.values[d1][target_slot].room_avg;
  int pos = 2;
  for (int s = target_slot + 1; s < n_slots; ++s) fv.values[pos++] = series.asat(d2, s);
  for (int s = 0; s <= target_slot; ++s) fv.values[pos++] = series.asat(d1, s);
  return fv;
}

TrainingSet build_training_set(const RegularSeries& series, int target_slot,
                               const OperationalCalendar& cal) {
  if (series.n_days() < 3) {
    throw Error(Errc::insufficient_history,
                "need 3 operational days, have " + std::to_string(series.n_days()));
  }
  TrainingSet ts;
  ts.slot = target_slot;
  for (int d = 2; d < series.n_days(); ++d) {
    if (series.imputed[d][target_slot]) continue;  // never train on filled targets
    ts.rows.push_back(build_feature_vector(series, series.days[d], target_slot, cal));
    ts.targets.push_back(series.asat(d, target_slot));
    ts.row_days.push_back(series.days[d]);
  }
  return ts;
}

TrainingSet build_pooled_training_set(const RegularSeries& series,
                                      const OperationalCalendar& cal) {
  if (series.n_days() < 3) {
    throw Error(Errc::insufficient_history,
                "need 3 operational days, have " + std::to_string(series.n_days()));
  }
  TrainingSet ts;
  ts.slot = -1;
  for (int d = 2; d < series.n_days(); ++d) {
    for (int s = 0; s < series.cal.slots_per_day(); ++s) {
      if (series.imputed[d][s]) continue;
      ts.rows.push_back(build_feature_vector(series, series.days[d], s, cal));
      ts.targets.push_back(series.asat(d, s));
      ts.row_days.push_back(series.days[d]);
    }
  }
  return ts;
}

Eigen::MatrixXd hankel_view(const TrainingSet& training_set) {
  if (training_set.rows.empty()) {
    throw Error(Errc::empty_set, "training set has no rows");
  }
  const int n = training_set.n_rows();
  const int m = training_set.n_features();
  Eigen::MatrixXd mat(n, m + 1);
  for (int r = 0; r < n; ++r) {
    mat.row(r).head(m) = training_set.rows[r].values.transpose();
    mat(r, m) = training_set.targets[r];
  }
  return mat;
}

std::string feature_dump_json(const std::vector<FeatureVector>& vectors,
                              const OperationalCalendar& cal) {
  std::string out = "[";
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const FeatureVector& fv = vectors[i];
    if (i) out += ",";
    out += "\n  {\"target_slot\": " + std::to_string(fv.target_slot);
    out += ", \"labels\": [";
    for (std::size_t j = 0; j < fv.labels.size(); ++j) {
      if (j) out += ", ";
      out += "\"" + json_escape(render_label(fv.labels[j], cal)) + "\"";
    }
    out += "], \"values\": [";
    for (Eigen::Index j = 0; j < fv.values.size(); ++j) {
      if (j) out += ", ";
      out += fmt_shortest(fv.values[j]);
    }
    out += "]}";
  }
  out += "\n]\n";
  return out;
}

}  // namespace aircast
