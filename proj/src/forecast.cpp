#include "aircast/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "aircast/error.hpp"
#include "aircast/parallel.hpp"

namespace aircast {

RegularSeries days_before(const RegularSeries& series, const Date& day,
                          int window_days) {
  const auto it = std::lower_bound(series.days.begin(), series.days.end(), day);
  int n = static_cast<int>(it - series.days.begin());
  int first = 0;
  if (window_days > 0 && n > window_days) first = n - window_days;

  RegularSeries out;
  out.cal = series.cal;
  for (int d = first; d < n; ++d) {
    out.days.push_back(series.days[d]);
    out.values.push_back(series.values[d]);
    out.imputed.push_back(series.imputed[d]);
  }
  return out;
}

std::vector<HuberModel> fit_all_slots(const RegularSeries& series,
                                      const OperationalCalendar& cal,
                                      const HuberOptions& opts, bool pooled,
                                      int threads, std::vector<HuberTrace>* traces) {
  if (pooled) {
    if (traces) traces->resize(1);
    const TrainingSet ts = build_pooled_training_set(series, cal);
    return {fit_huber(ts, cal, opts, traces ? &(*traces)[0] : nullptr)};
  }
  const int n_slots = cal.slots_per_day();
  std::vector<HuberModel> models(n_slots);
  if (traces) traces->resize(n_slots);
  parallel_for(n_slots, threads, [&](int s) {
    const TrainingSet ts = build_training_set(series, s, cal);
    models[s] = fit_huber(ts, cal, opts, traces ? &(*traces)[s] : nullptr);
  });
  return models;
}

ForecastCurve forecast_day(const std::vector<HuberModel>& models,
                           const RegularSeries& series, const Date& target_day,
                           const OperationalCalendar& cal) {
  const int n_slots = cal.slots_per_day();
  const bool pooled = models.size() == 1 && models.front().slot < 0;
  if (!pooled) {
    if (static_cast<int>(models.size()) != n_slots) {
      throw Error(Errc::label_mismatch,
                  "expected " + std::to_string(n_slots) + " per-slot models, got " +
                      std::to_string(models.size()));
    }
    for (int s = 0; s < n_slots; ++s) {
      if (models[s].slot != s) {
        throw Error(Errc::label_mismatch,
                    "model at position " + std::to_string(s) + " is for slot " +
                        std::to_string(models[s].slot));
      }
    }
  }

  ForecastCurve curve;
  curve.day = target_day;
  curve.values.resize(n_slots);
  for (int s = 0; s < n_slots; ++s) {
    const FeatureVector fv = build_feature_vector(series, target_day, s, cal);
    curve.values[s] = predict(pooled ? models.front() : models[s], fv);
  }
  return curve;
}

BacktestResult backtest(const RegularSeries& series, const std::vector<Date>& eval_days,
                        const OperationalCalendar& cal, const BacktestOptions& opts) {
  const int n_slots = cal.slots_per_day();
  BacktestResult result;
  result.per_slot_mae.assign(n_slots, 0.0);

  for (const Date& day : eval_days) {
    const int idx = series.day_index(day);
    if (idx < 0) {
      throw Error(Errc::missing_day, "no recorded curve for " + format_date(day));
    }
    const RegularSeries history = days_before(series, day, opts.window_days);
    if (history.n_days() < 3) {
      throw Error(Errc::insufficient_history,
                  format_date(day) + " has " + std::to_string(history.n_days()) +
                      " preceding operational days, need 3");
    }
    const std::vector<HuberModel> models =
        fit_all_slots(history, cal, opts.huber, opts.pooled, opts.threads);
    const ForecastCurve curve = forecast_day(models, history, day, cal);

    BacktestDay bd;
    bd.day = day;
    bd.forecast = curve.values;
    bd.truth.resize(n_slots);
    bd.diff.resize(n_slots);
    for (int s = 0; s < n_slots; ++s) {
      bd.truth[s] = series.asat(idx, s);
      bd.diff[s] = bd.truth[s] - bd.forecast[s];
      const double a = std::abs(bd.diff[s]);
      bd.mae += a;
      if (a > bd.max_abs) {
        bd.max_abs = a;
        bd.argmax_slot = s;
      }
      result.per_slot_mae[s] += a;
    }
    bd.mae /= n_slots;
    result.mae += bd.mae;
    result.max_abs = std::max(result.max_abs, bd.max_abs);
    result.days.push_back(std::move(bd));
  }

  if (!result.days.empty()) {
    result.mae /= static_cast<double>(result.days.size());
    for (double& v : result.per_slot_mae) v /= static_cast<double>(result.days.size());
  }
  return result;
}

}  // namespace aircast
