#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "aircast/robust.hpp"
#include "aircast/windowing.hpp"

namespace aircast {

struct HuberOptions {
  double delta = 1.35;  // threshold in robust-scale units
  int max_iter = 100;
  double tol = 1e-8;  // convergence: max coefficient change
};

using HuberTrace = IrlsTrace<double>;

// Fitted linear model in raw feature units. Standardization is internal to
// the fit; the stored coefficients apply directly to feature values.
struct HuberModel {
  int slot = 0;  // -1 when pooled across slots
  double intercept = 0.0;
  Eigen::VectorXd weights;         // aligned to FeatureVector order
  Eigen::VectorXd feature_means;   // training column means
  Eigen::VectorXd feature_scales;  // training column SDs (1 for constants)
  std::vector<std::string> labels;
  double delta = 1.35;
  int n_train = 0;
};

// Huber-loss fit of a training set. Pass `trace` to record the per-pass
// robust scale and objective values.
HuberModel fit_huber(const TrainingSet& ts, const OperationalCalendar& cal,
                     const HuberOptions& opts = {}, HuberTrace* trace = nullptr);

// β₀ + Σ βᵢxᵢ. The vector must come from the model's slot (pooled models
// only require matching length).
double predict(const HuberModel& model, const FeatureVector& x);

// JSON persistence: fixed field order, numbers as shortest round-trip
// decimals, so a written model re-reads bit-identically.
std::string model_to_json(const HuberModel& model);
HuberModel model_from_json(const std::string& text);
void write_model(const HuberModel& model, const std::string& path);
HuberModel read_model(const std::string& path);

}  // namespace aircast
