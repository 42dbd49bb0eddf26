#pragma once

#include <vector>

#include "aircast/model.hpp"

namespace aircast {

// One day's predicted control curve, slot-indexed.
struct ForecastCurve {
  Date day;
  std::vector<double> values;
};

// Copy of the series days strictly before `day`; with window_days > 0 only
// that many most recent days are kept.
RegularSeries days_before(const RegularSeries& series, const Date& day,
                          int window_days = 0);

// One model per slot (or a single pooled model for every slot). Slot fits
// are independent, so they fan out over `threads` workers.
std::vector<HuberModel> fit_all_slots(const RegularSeries& series,
                                      const OperationalCalendar& cal,
                                      const HuberOptions& opts, bool pooled,
                                      int threads = 1,
                                      std::vector<HuberTrace>* traces = nullptr);

// Predict every slot of target_day from true historical inputs. `models`
// is either slots_per_day per-slot models or one pooled model.
ForecastCurve forecast_day(const std::vector<HuberModel>& models,
                           const RegularSeries& series, const Date& target_day,
                           const OperationalCalendar& cal);

struct BacktestDay {
  Date day;
  std::vector<double> truth;
  std::vector<double> forecast;
  std::vector<double> diff;  // truth − forecast, per slot
  double mae = 0.0;
  double max_abs = 0.0;
  int argmax_slot = 0;  // earliest slot attaining max |diff|
};

struct BacktestResult {
  std::vector<BacktestDay> days;
  double mae = 0.0;
  double max_abs = 0.0;
  std::vector<double> per_slot_mae;
};

struct BacktestOptions {
  HuberOptions huber;
  bool pooled = false;
  int window_days = 0;  // 0 = all available history
  int threads = 1;
};

// Walk-forward evaluation: for each eval day, refit on everything strictly
// before it and compare the forecast with the recorded curve.
BacktestResult backtest(const RegularSeries& series, const std::vector<Date>& eval_days,
                        const OperationalCalendar& cal,
                        const BacktestOptions& opts = {});

}  // namespace aircast
