#pragma once

// Shared test support: independent oracles (implemented with different
// algorithms than the library paths they check) plus process/file helpers.

#include <sys/wait.h>
#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "aircast/rng.hpp"
#include "aircast/series.hpp"
#include "aircast/windowing.hpp"

namespace testkit {

// Training set over arbitrary data, bypassing the windowing pipeline.
// Labels are synthetic ("f0:AT", "f1:RT-avg", lags beyond that) purely to
// satisfy shape expectations; slot is 0.
inline aircast::TrainingSet toy_training_set(const Eigen::MatrixXd& X,
                                             const Eigen::VectorXd& y) {
  aircast::TrainingSet ts;
  ts.slot = 0;
  std::vector<aircast::FeatureLabel> labels;
  for (int j = 0; j < X.cols(); ++j) {
    aircast::FeatureLabel label;
    label.index = j;
    label.kind = j == 0   ? aircast::FeatureKind::ambient
                 : j == 1 ? aircast::FeatureKind::room_avg
                          : aircast::FeatureKind::asat_lag;
    label.clock_slot = j >= 2 ? (j - 2) % 37 : 0;
    label.day_offset = j >= 2 ? 1 : 0;
    labels.push_back(label);
  }
  for (int r = 0; r < X.rows(); ++r) {
    aircast::FeatureVector fv;
    fv.target_day = aircast::add_days(aircast::Date{2024, 9, 2}, r);
    fv.target_slot = 0;
    fv.values = X.row(r).transpose();
    fv.labels = labels;
    ts.rows.push_back(std::move(fv));
    ts.targets.push_back(y(r));
    ts.row_days.push_back(ts.rows.back().target_day);
  }
  return ts;
}

// A feature vector compatible with toy_training_set models.
inline aircast::FeatureVector toy_point(const Eigen::VectorXd& x) {
  Eigen::MatrixXd X(1, x.size());
  X.row(0) = x.transpose();
  return toy_training_set(X, Eigen::VectorXd::Zero(1)).rows.front();
}

// ---- oracles ---------------------------------------------------------------

// Ordinary least squares by explicit normal equations + full-pivot LU —
// deliberately a different route than the library's QR-on-design solver.
// Returns (intercept, weights...) as one vector of length 1 + n_features.
inline Eigen::VectorXd ols_oracle(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Eigen::MatrixXd A(X.rows(), X.cols() + 1);
  A.col(0).setOnes();
  A.rightCols(X.cols()) = X;
  const Eigen::MatrixXd gram = A.transpose() * A;
  const Eigen::VectorXd rhs = A.transpose() * y;
  return gram.fullPivLu().solve(rhs);
}

// Shapley values by brute-force enumeration of all M! permutations, each
// marginal computed by exhaustive background averaging. Independent of the
// library's subset-weight formula; practical for M <= 7.
template <typename F>
Eigen::VectorXd permutation_shapley_oracle(F&& f, const Eigen::VectorXd& x,
                                           const Eigen::MatrixXd& bg) {
  const int m = static_cast<int>(x.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);

  const auto value_of = [&](const std::vector<bool>& present) {
    Eigen::VectorXd z(m);
    double sum = 0.0;
    for (Eigen::Index r = 0; r < bg.rows(); ++r) {
      for (int i = 0; i < m; ++i) z(i) = present[i] ? x(i) : bg(r, i);
      sum += f(z);
    }
    return sum / static_cast<double>(bg.rows());
  };

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(m);
  long n_perms = 0;
  do {
    std::vector<bool> present(m, false);
    double prev = value_of(present);
    for (int i : order) {
      present[i] = true;
      const double cur = value_of(present);
      phi(i) += cur - prev;
      prev = cur;
    }
    ++n_perms;
  } while (std::next_permutation(order.begin(), order.end()));
  return phi / static_cast<double>(n_perms);
}

// Persistence baseline: the previous series day's value at the same slot.
inline std::vector<double> persistence_curve(const aircast::RegularSeries& series,
                                             int target_day_index) {
  const int prev = target_day_index - 1;
  std::vector<double> curve;
  const int n_slots = series.cal.slots_per_day();
  for (int s = 0; s < n_slots; ++s) curve.push_back(series.asat(prev, s));
  return curve;
}

// ---- process / filesystem helpers ------------------------------------------

inline std::string aircast_bin() {
  const char* env = std::getenv("AIRCAST_BIN");
  return env ? env : "aircast";
}

// Fresh directory under the system temp root; removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("aircast_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

// Run the CLI binary; returns the exit code, captures stderr when asked.
inline int run_cli(const std::string& args, const std::string& stderr_file = "") {
  std::string cmd = aircast_bin() + " " + args + " >/dev/null";
  cmd += stderr_file.empty() ? " 2>/dev/null" : " 2>" + stderr_file;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

// ---- fixture builders -------------------------------------------------------

// Synthetic raw CSV covering `n_days` consecutive weekdays from a Monday,
// full operational grid, asat encodes (day, slot) unless noise is added.
inline std::string weekday_grid_csv(int n_days, double (*asat_of)(int, int)) {
  const aircast::Date start{2024, 9, 2};  // a Monday
  std::string out = "ts,asat,at,rt_avg\n";
  int emitted = 0;
  aircast::Date d = start;
  while (emitted < n_days) {
    if (aircast::weekday(d) < 5) {
      for (int s = 0; s < 37; ++s) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%sT%02d:%02d,%.6f,%.6f,%.6f\n",
                      aircast::format_date(d).c_str(), (480 + 15 * s) / 60,
                      (480 + 15 * s) % 60, asat_of(emitted, s),
                      5.0 + 0.1 * emitted, 21.0 + 0.01 * s);
        out += buf;
      }
      ++emitted;
    }
    d = aircast::add_days(d, 1);
  }
  return out;
}

}  // namespace testkit
