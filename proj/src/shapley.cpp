#include "aircast/shapley.hpp"

#include "aircast/textio.hpp"

namespace aircast {

BackgroundSet background_from(const TrainingSet& ts) {
  BackgroundSet bg;
  bg.rows.resize(ts.n_rows(), ts.n_features());
  for (int r = 0; r < ts.n_rows(); ++r) {
    bg.rows.row(r) = ts.rows[r].values.transpose();
  }
  return bg;
}

const char* attr_method_name(AttrMethod method) {
  switch (method) {
    case AttrMethod::linear_exact: return "linear_exact";
    case AttrMethod::shapley_exact: return "shapley_exact";
    case AttrMethod::shapley_mc: return "shapley_mc";
  }
  return "?";
}

EfficiencyResult efficiency_check(const Attribution& attr, double prediction,
                                  double tol) {
  EfficiencyResult result;
  result.residual = std::abs(attr.base_value + attr.phi.sum() - prediction);
  result.pass = result.residual <= tol;
  return result;
}

double default_efficiency_tol(const Attribution& attr) {
  if (attr.method == AttrMethod::shapley_mc && attr.std_errors.size() > 0) {
    return 4.0 * attr.std_errors.maxCoeff();
  }
  return 1e-9;
}

namespace {

std::vector<int> label_indices(const FeatureVector& x) {
  std::vector<int> idx;
  idx.reserve(x.labels.size());
  for (const FeatureLabel& label : x.labels) idx.push_back(label.index);
  return idx;
}

void check_alignment(const HuberModel& model, const FeatureVector& x,
                     const BackgroundSet& bg) {
  if (bg.rows.rows() == 0) {
    throw Error(Errc::empty_background, "background set has no rows");
  }
  if (x.values.size() != model.weights.size() || bg.rows.cols() != model.weights.size()) {
    throw Error(Errc::label_mismatch, "model, point, and background disagree on width");
  }
  if (model.slot >= 0 && x.target_slot != model.slot) {
    throw Error(Errc::label_mismatch,
                "vector built for slot " + std::to_string(x.target_slot) +
                    ", model fitted for slot " + std::to_string(model.slot));
  }
}

}  // namespace

Attribution linear_contributions(const HuberModel& model, const FeatureVector& x,
                                 const BackgroundSet& bg) {
  check_alignment(model, x, bg);
  Attribution attr;
  attr.method = AttrMethod::linear_exact;
  attr.labels = model.labels;
  attr.indices = label_indices(x);
  attr.x = x.values;
  attr.prediction = predict(model, x);
  const Eigen::VectorXd bg_means = bg.rows.colwise().mean();
  attr.phi = model.weights.cwiseProduct(x.values - bg_means);
  attr.base_value = model.intercept + model.weights.dot(bg_means);
  return attr;
}

Attribution exact_shapley(const HuberModel& model, const FeatureVector& x,
                          const BackgroundSet& bg, int max_features) {
  check_alignment(model, x, bg);
  const auto f = [&](const Eigen::VectorXd& z) {
    return model.intercept + model.weights.dot(z);
  };
  Attribution attr;
  attr.method = AttrMethod::shapley_exact;
  attr.labels = model.labels;
  attr.indices = label_indices(x);
  attr.x = x.values;
  attr.prediction = predict(model, x);
  attr.phi = exact_shapley_phi(f, x.values, bg.rows, max_features);
  attr.base_value = background_mean(f, bg.rows);
  return attr;
}

Attribution monte_carlo_shapley(const HuberModel& model, const FeatureVector& x,
                                const BackgroundSet& bg, int n_permutations,
                                std::uint64_t seed, int threads) {
  check_alignment(model, x, bg);
  const auto f = [&](const Eigen::VectorXd& z) {
    return model.intercept + model.weights.dot(z);
  };
  const McShapleyResult mc =
      monte_carlo_shapley_run(f, x.values, bg.rows, n_permutations, seed, threads);
  Attribution attr;
  attr.method = AttrMethod::shapley_mc;
  attr.labels = model.labels;
  attr.indices = label_indices(x);
  attr.x = x.values;
  attr.prediction = predict(model, x);
  attr.phi = mc.phi;
  attr.std_errors = mc.std_errors;
  attr.base_value = mc.base_value;
  attr.n_samples = n_permutations;
  attr.seed = seed;
  return attr;
}

std::string attribution_json(const Attribution& attr) {
  std::string out = "{\n";
  out += "  \"method\": \"" + std::string(attr_method_name(attr.method)) + "\"";
  out += ",\n  \"base_value\": " + fmt_shortest(attr.base_value);
  out += ",\n  \"labels\": [";
  for (std::size_t i = 0; i < attr.labels.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + json_escape(attr.labels[i]) + "\"";
  }
  out += "]";
  out += ",\n  \"phi\": [";
  for (Eigen::Index i = 0; i < attr.phi.size(); ++i) {
    if (i) out += ", ";
    out += fmt_shortest(attr.phi(i));
  }
  out += "]";
  if (attr.method == AttrMethod::shapley_mc) {
    out += ",\n  \"std_errors\": [";
    for (Eigen::Index i = 0; i < attr.std_errors.size(); ++i) {
      if (i) out += ", ";
      out += fmt_shortest(attr.std_errors(i));
    }
    out += "]";
    out += ",\n  \"n_samples\": " + std::to_string(attr.n_samples);
    out += ",\n  \"seed\": " + std::to_string(attr.seed);
  }
  const EfficiencyResult eff =
      efficiency_check(attr, attr.prediction, default_efficiency_tol(attr));
  out += ",\n  \"efficiency_residual\": " + fmt_shortest(eff.residual);
  out += "\n}\n";
  return out;
}

}  // namespace aircast
