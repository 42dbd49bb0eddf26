#include "aircast/model.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "aircast/error.hpp"
#include "aircast/textio.hpp"

namespace aircast {

HuberModel fit_huber(const TrainingSet& ts, const OperationalCalendar& cal,
                     const HuberOptions& opts, HuberTrace* trace) {
  if (opts.delta <= 0 || opts.max_iter < 1 || opts.tol <= 0) {
    throw Error(Errc::config_invalid, "bad Huber options");
  }
  const int n = ts.n_rows();
  if (n < 2) {
    throw Error(Errc::not_enough_rows,
                "need at least 2 training rows, have " + std::to_string(n));
  }
  const int m = ts.n_features();

  Eigen::MatrixXd x(n, m);
  Eigen::VectorXd y(n);
  for (int r = 0; r < n; ++r) {
    x.row(r) = ts.rows[r].values.transpose();
    y(r) = ts.targets[r];
  }

  HuberModel model;
  model.slot = ts.slot;
  model.n_train = n;
  model.delta = opts.delta;
  model.feature_means = x.colwise().mean();
  model.feature_scales.resize(m);

  // Standardize; constant columns are zeroed out so they cannot carry
  // weight, and keep unit scale for a well-defined stored model.
  Eigen::MatrixXd xs(n, m);
  std::vector<bool> constant(m, false);
  for (int k = 0; k < m; ++k) {
    const Eigen::VectorXd centered = x.col(k).array() - model.feature_means(k);
    const double sd = std::sqrt(centered.squaredNorm() / n);
    if (sd < 1e-12 * std::max(1.0, std::abs(model.feature_means(k)))) {
      constant[k] = true;
      model.feature_scales(k) = 1.0;
      xs.col(k).setZero();
    } else {
      model.feature_scales(k) = sd;
      xs.col(k) = centered / sd;
    }
  }

  Eigen::MatrixXd design(n, m + 1);
  design.col(0).setOnes();
  design.rightCols(m) = xs;
  const IrlsFit<double> fit =
      huber_irls<double>(design, y, opts.delta, opts.max_iter, opts.tol, trace);

  model.weights.resize(m);
  double intercept = fit.coeffs(0);
  for (int k = 0; k < m; ++k) {
    if (constant[k]) {
      model.weights(k) = 0.0;
      continue;
    }
    model.weights(k) = fit.coeffs(k + 1) / model.feature_scales(k);
    intercept -= fit.coeffs(k + 1) * model.feature_means(k) / model.feature_scales(k);
  }
  model.intercept = intercept;

  model.labels.reserve(m);
  if (ts.slot < 0) {
    for (int k = 0; k < m; ++k) model.labels.push_back(pooled_label(k, cal));
  } else {
    for (const FeatureLabel& label : ts.rows.front().labels) {
      model.labels.push_back(render_label(label, cal));
    }
  }
  return model;
}

double predict(const HuberModel& model, const FeatureVector& x) {
  if (x.values.size() != model.weights.size()) {
    throw Error(Errc::label_mismatch,
                "vector has " + std::to_string(x.values.size()) + " features, model has " +
                    std::to_string(model.weights.size()));
  }
  if (model.slot >= 0 && x.target_slot != model.slot) {
    throw Error(Errc::label_mismatch,
                "vector built for slot " + std::to_string(x.target_slot) +
                    ", model fitted for slot " + std::to_string(model.slot));
  }
  return model.intercept + model.weights.dot(x.values);
}

namespace {

void append_array(std::string& out, const Eigen::VectorXd& v) {
  out += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_shortest(v(i));
  }
  out += ']';
}

}  // namespace

std::string model_to_json(const HuberModel& model) {
  std::string out = "{\n";
  out += "  \"slot\": ";
  out += model.slot < 0 ? std::string("\"pooled\"") : std::to_string(model.slot);
  out += ",\n  \"intercept\": " + fmt_shortest(model.intercept);
  out += ",\n  \"weights\": ";
  append_array(out, model.weights);
  out += ",\n  \"labels\": [";
  for (std::size_t i = 0; i < model.labels.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + json_escape(model.labels[i]) + "\"";
  }
  out += "]";
  out += ",\n  \"feature_means\": ";
  append_array(out, model.feature_means);
  out += ",\n  \"feature_scales\": ";
  append_array(out, model.feature_scales);
  out += ",\n  \"delta\": " + fmt_shortest(model.delta);
  out += ",\n  \"n_train\": " + std::to_string(model.n_train);
  out += "\n}\n";
  return out;
}

HuberModel model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io_error, std::string("bad model JSON: ") + e.what());
  }
  try {
    HuberModel model;
    if (doc.at("slot").is_string()) {
      if (doc["slot"].get<std::string>() != "pooled") {
        throw Error(Errc::io_error, "bad model JSON: unknown slot tag");
      }
      model.slot = -1;
    } else {
      model.slot = doc.at("slot").get<int>();
    }
    model.intercept = doc.at("intercept").get<double>();
    const auto to_vec = [&](const char* key) {
      const auto& arr = doc.at(key);
      Eigen::VectorXd v(arr.size());
      for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
      return v;
    };
    model.weights = to_vec("weights");
    for (const auto& s : doc.at("labels")) model.labels.push_back(s.get<std::string>());
    model.feature_means = to_vec("feature_means");
    model.feature_scales = to_vec("feature_scales");
    model.delta = doc.at("delta").get<double>();
    model.n_train = doc.at("n_train").get<int>();
    if (model.feature_means.size() != model.weights.size() ||
        model.feature_scales.size() != model.weights.size() ||
        static_cast<Eigen::Index>(model.labels.size()) != model.weights.size()) {
      throw Error(Errc::io_error, "bad model JSON: array lengths disagree");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io_error, std::string("bad model JSON: ") + e.what());
  }
}

void write_model(const HuberModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << model_to_json(model);
  if (!out) throw Error(Errc::io_error, "write failed for '" + path + "'");
}

HuberModel read_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace aircast
