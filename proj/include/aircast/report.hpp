#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "aircast/model.hpp"
#include "aircast/shapley.hpp"

namespace aircast {

enum class Format { json, csv, svg };
Format parse_format(const std::string& name);
const char* format_ext(Format format);

// One contribution line of a waterfall, already in display order.
struct SliceEntry {
  int index = 0;  // clock-fixed feature index
  std::string label;
  double value = 0.0;  // feature value at the explained point
  double phi = 0.0;
  double cumulative = 0.0;  // base + contributions so far
};

// Contrastive explanation of a single forecast point: contributions sorted
// by |φ| descending (ties by ascending feature index), running sums walking
// from the base value to the prediction.
struct SliceReport {
  int minute_of_day = 0;
  double prediction = 0.0;
  double base_value = 0.0;
  std::vector<SliceEntry> contributions;
};

// Throws EfficiencyViolation unless base + Σφ reproduces the prediction
// within the attribution's own tolerance.
SliceReport make_slice(const Attribution& attr, double prediction,
                       int minute_of_day);

// Per-slice "timestamp | top-k labels" view.
struct TopKTable {
  int k = 2;
  std::vector<std::string> timestamps;
  std::vector<std::vector<std::string>> labels;  // k per row
};
TopKTable top_k_table(const std::vector<SliceReport>& slices, int k = 2);

// slots × features 0/1 indicator of each slice's two largest-|φ| features,
// columns keyed by clock-fixed feature index.
struct BinaryTopMatrix {
  Eigen::MatrixXi cells;
};
BinaryTopMatrix binary_top_matrix(const std::vector<SliceReport>& slices);

struct DifferenceCurve {
  std::vector<int> minutes;
  std::vector<double> truth;
  std::vector<double> forecast;
  std::vector<double> diff;  // truth − forecast
  int argmax_slot = 0;       // earliest slot attaining max |diff|
  double max_abs = 0.0;
};
DifferenceCurve difference_curve(const std::vector<double>& truth,
                                 const std::vector<double>& forecast,
                                 const OperationalCalendar& cal = {});

// Spread of each coefficient across a family of per-slot models, keyed by
// feature index (positions rotate per slot; indices do not).
struct CoefficientRow {
  int index = 0;
  FeatureKind kind = FeatureKind::ambient;
  int clock_minute = -1;  // asat_lag only; -1 when not applicable
  double min = 0.0, max = 0.0, mean = 0.0, median = 0.0;
};
struct CoefficientDistribution {
  std::vector<CoefficientRow> rows;
};
CoefficientDistribution coefficient_distribution(const std::vector<HuberModel>& models,
                                                 const OperationalCalendar& cal);

// Byte-deterministic renders: fixed key/column order, 6-decimal fixed-point
// numbers, self-contained SVG. Combinations without a defined drawing
// (table/distribution as SVG) throw UnsupportedFormat.
std::string render(const SliceReport& slice, Format format);
std::string render(const TopKTable& table, Format format);
std::string render(const BinaryTopMatrix& matrix, Format format);
std::string render(const DifferenceCurve& curve, Format format);
std::string render(const CoefficientDistribution& dist, Format format);

// "slice_0945.json" style name for the slice at that clock time.
std::string slice_filename(int minute_of_day, Format format);

}  // namespace aircast
