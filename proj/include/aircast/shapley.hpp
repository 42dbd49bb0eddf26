#pragma once

#include <Eigen/Core>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "aircast/error.hpp"
#include "aircast/model.hpp"
#include "aircast/parallel.hpp"
#include "aircast/rng.hpp"

namespace aircast {

// Training features recycled as the empirical distribution that "absent"
// feature values are drawn from.
struct BackgroundSet {
  Eigen::MatrixXd rows;  // one raw feature vector per row
};

BackgroundSet background_from(const TrainingSet& ts);

// Coalition vector: true = feature takes its value from the explained
// point, false = from the background.
using CoalitionMask = std::vector<bool>;

enum class AttrMethod { linear_exact, shapley_exact, shapley_mc };
const char* attr_method_name(AttrMethod method);

struct Attribution {
  AttrMethod method = AttrMethod::linear_exact;
  double base_value = 0.0;  // average prediction the contributions start from
  double prediction = 0.0;  // f̂ at the explained point
  Eigen::VectorXd x;        // the explained point's feature values
  Eigen::VectorXd phi;
  std::vector<std::string> labels;
  std::vector<int> indices;    // clock-fixed feature index per position
  Eigen::VectorXd std_errors;  // shapley_mc only
  int n_samples = 0;           // shapley_mc only: permutations used
  std::uint64_t seed = 0;      // shapley_mc only
};

struct EfficiencyResult {
  bool pass = false;
  double residual = 0.0;
};

// |base_value + Σφ − prediction| against a tolerance.
EfficiencyResult efficiency_check(const Attribution& attr, double prediction,
                                  double tol);

// 1e-9 for the exact methods, 4×max std_error for Monte-Carlo.
double default_efficiency_tol(const Attribution& attr);

// {method, base_value, labels, phi, [std_errors, n_samples, seed],
// efficiency_residual} with shortest round-trip numbers.
std::string attribution_json(const Attribution& attr);

// ---- scalar kernels (any callable f: Eigen::VectorXd -> double) ----------

template <typename F>
double background_mean(F&& f, const Eigen::MatrixXd& bg) {
  double sum = 0.0;
  for (Eigen::Index r = 0; r < bg.rows(); ++r) sum += f(bg.row(r).transpose().eval());
  return sum / static_cast<double>(bg.rows());
}

namespace detail {

inline void check_background(const Eigen::MatrixXd& bg, Eigen::Index m) {
  if (bg.rows() == 0) {
    throw Error(Errc::empty_background, "background set has no rows");
  }
  if (bg.cols() != m) {
    throw Error(Errc::label_mismatch,
                "background has " + std::to_string(bg.cols()) +
                    " columns, point has " + std::to_string(m));
  }
}

template <typename F>
double masked_mean(F&& f, const Eigen::VectorXd& x, const CoalitionMask& mask,
                   const Eigen::MatrixXd& bg) {
  const Eigen::Index m = x.size();
  Eigen::VectorXd z(m);
  double sum = 0.0;
  for (Eigen::Index r = 0; r < bg.rows(); ++r) {
    for (Eigen::Index i = 0; i < m; ++i) z(i) = mask[i] ? x(i) : bg(r, i);
    sum += f(z);
  }
  return sum / static_cast<double>(bg.rows());
}

}  // namespace detail

// Value of a coalition, Monte-Carlo form: absent features are drawn jointly
// from one uniformly sampled background row per draw (with replacement);
// the background's average prediction is subtracted so v(∅) ≈ 0.
template <typename F>
double coalition_value(F&& f, const Eigen::VectorXd& x, const CoalitionMask& mask,
                       const Eigen::MatrixXd& bg, int n_draws, RngStream& rng) {
  detail::check_background(bg, x.size());
  if (n_draws < 1) {
    throw Error(Errc::config_invalid, "coalition_value needs n_draws >= 1");
  }
  const Eigen::Index m = x.size();
  const int n_bg = static_cast<int>(bg.rows());
  Eigen::VectorXd z(m);
  double sum = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    const int r = rng.bounded(n_bg);
    for (Eigen::Index i = 0; i < m; ++i) z(i) = mask[i] ? x(i) : bg(r, i);
    sum += f(z);
  }
  return sum / n_draws - background_mean(f, bg);
}

// Deterministic variant: every background row used exactly once.
template <typename F>
double coalition_value_exact(F&& f, const Eigen::VectorXd& x,
                             const CoalitionMask& mask, const Eigen::MatrixXd& bg) {
  detail::check_background(bg, x.size());
  return detail::masked_mean(f, x, mask, bg) - background_mean(f, bg);
}

// Exact Shapley values by full coalition enumeration; the value table is
// built with exhaustive background averaging so the result is deterministic.
template <typename F>
Eigen::VectorXd exact_shapley_phi(F&& f, const Eigen::VectorXd& x,
                                  const Eigen::MatrixXd& bg, int max_features = 20) {
  detail::check_background(bg, x.size());
  const int m = static_cast<int>(x.size());
  if (m > max_features) {
    throw Error(Errc::too_many_features,
                std::to_string(m) + " features exceed the exact-enumeration cap of " +
                    std::to_string(max_features));
  }

  const std::uint32_t n_masks = 1u << m;
  std::vector<double> value(n_masks);
  {
    Eigen::VectorXd z(m);
    for (std::uint32_t s = 0; s < n_masks; ++s) {
      double sum = 0.0;
      for (Eigen::Index r = 0; r < bg.rows(); ++r) {
        for (int i = 0; i < m; ++i) z(i) = (s >> i) & 1u ? x(i) : bg(r, i);
        sum += f(z);
      }
      value[s] = sum / static_cast<double>(bg.rows());
    }
  }

  // Coalition weight by size: |S|!(m−|S|−1)!/m!
  std::vector<double> weight(m);
  weight[0] = 1.0 / m;
  for (int s = 0; s + 1 < m; ++s) weight[s + 1] = weight[s] * (s + 1) / (m - s - 1);

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(m);
  for (std::uint32_t s = 0; s < n_masks; ++s) {
    const int size = std::popcount(s);
    if (size == m) continue;
    const double w = weight[size];
    for (int i = 0; i < m; ++i) {
      if ((s >> i) & 1u) continue;
      phi(i) += w * (value[s | (1u << i)] - value[s]);
    }
  }
  return phi;
}

struct McShapleyResult {
  Eigen::VectorXd phi;
  Eigen::VectorXd std_errors;
  double base_value = 0.0;  // mean prediction over the drawn donor rows
};

// Permutation-sampling estimator. Each permutation draws one donor row and
// walks the permutation flipping features donor→point; the prediction
// increments are that permutation's marginal contributions. Permutation p
// always uses substream (seed, p), so results are identical for any worker
// count. Summation is in permutation order, independent of threading.
template <typename F>
McShapleyResult monte_carlo_shapley_run(F&& f, const Eigen::VectorXd& x,
                                        const Eigen::MatrixXd& bg, int n_permutations,
                                        std::uint64_t seed, int threads = 1) {
  detail::check_background(bg, x.size());
  if (n_permutations < 2) {
    throw Error(Errc::config_invalid, "need at least 2 permutations");
  }
  const int m = static_cast<int>(x.size());
  const int n_bg = static_cast<int>(bg.rows());

  Eigen::MatrixXd increments(n_permutations, m);
  Eigen::VectorXd donor_pred(n_permutations);
  parallel_for(n_permutations, threads, [&](int p) {
    RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(p));
    const int donor = rng.bounded(n_bg);
    const std::vector<int> order = rng.permutation(m);
    Eigen::VectorXd z = bg.row(donor).transpose();
    double prev = f(z);
    donor_pred(p) = prev;
    for (int i : order) {
      z(i) = x(i);
      const double cur = f(z);
      increments(p, i) = cur - prev;
      prev = cur;
    }
  });

  McShapleyResult result;
  result.phi = Eigen::VectorXd::Zero(m);
  result.std_errors = Eigen::VectorXd::Zero(m);
  double base = 0.0;
  for (int p = 0; p < n_permutations; ++p) {
    base += donor_pred(p);
    result.phi += increments.row(p).transpose();
  }
  result.base_value = base / n_permutations;
  result.phi /= n_permutations;
  for (int p = 0; p < n_permutations; ++p) {
    result.std_errors.array() +=
        (increments.row(p).transpose() - result.phi).array().square();
  }
  result.std_errors =
      (result.std_errors / (n_permutations - 1)).cwiseSqrt() /
      std::sqrt(static_cast<double>(n_permutations));
  return result;
}

// ---- model-aware fronts ---------------------------------------------------

// Closed form for a linear model: φᵢ = βᵢxᵢ − βᵢ·mean(bg column i).
Attribution linear_contributions(const HuberModel& model, const FeatureVector& x,
                                 const BackgroundSet& bg);

Attribution exact_shapley(const HuberModel& model, const FeatureVector& x,
                          const BackgroundSet& bg, int max_features = 20);

Attribution monte_carlo_shapley(const HuberModel& model, const FeatureVector& x,
                                const BackgroundSet& bg, int n_permutations,
                                std::uint64_t seed, int threads = 1);

}  // namespace aircast
