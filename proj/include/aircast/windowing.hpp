#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "aircast/labels.hpp"
#include "aircast/series.hpp"

namespace aircast {

// One regression input: exogenous readings plus the rotated two-day ASAT
// lag window, all aligned to (target_day, target_slot).
struct FeatureVector {
  Date target_day;
  int target_slot = 0;
  Eigen::VectorXd values;            // 2 + slots_per_day entries
  std::vector<FeatureLabel> labels;  // same order as values
};

// Per-slot design data: one row per usable historical day, chronological.
struct TrainingSet {
  int slot = 0;  // -1 when rows are pooled across all slots
  std::vector<FeatureVector> rows;
  std::vector<double> targets;
  std::vector<Date> row_days;  // target day of each row

  int n_rows() const { return static_cast<int>(rows.size()); }
  int n_features() const {
    return rows.empty() ? 0 : static_cast<int>(rows.front().values.size());
  }
};

// Lag window ending at (D-1, target_slot) where D-1 and D-2 are the two
// series days immediately before target_day. Ambient and room average are
// the D-1 readings at the target slot.
FeatureVector build_feature_vector(const RegularSeries& series, const Date& target_day,
                                   int target_slot, const OperationalCalendar& cal);

// One row per series day from the third onward, skipping days whose target
// reading was imputed.
TrainingSet build_training_set(const RegularSeries& series, int target_slot,
                               const OperationalCalendar& cal);

// All slots' rows stacked (chronological by target timestamp); positions
// are recency-aligned so a single model can be shared across slots.
TrainingSet build_pooled_training_set(const RegularSeries& series,
                                      const OperationalCalendar& cal);

// Flatten to a (rows x features+1) matrix: feature columns in label order,
// target last.
Eigen::MatrixXd hankel_view(const TrainingSet& training_set);

// Debug dump: JSON array of {target_slot, labels, values} per vector.
std::string feature_dump_json(const std::vector<FeatureVector>& vectors,
                              const OperationalCalendar& cal);

}  // namespace aircast
