#include "aircast/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "aircast/error.hpp"
#include "aircast/robust.hpp"
#include "aircast/textio.hpp"

namespace aircast {

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "svg") return Format::svg;
  throw Error(Errc::unsupported_format, "unknown format '" + name + "'");
}

const char* format_ext(Format format) {
  switch (format) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::svg: return "svg";
  }
  return "?";
}

namespace {

std::string fmt2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

const char* kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::ambient: return "ambient";
    case FeatureKind::room_avg: return "room_avg";
    case FeatureKind::asat_lag: return "asat_lag";
  }
  return "?";
}

}  // namespace

SliceReport make_slice(const Attribution& attr, double prediction,
                       int minute_of_day) {
  const EfficiencyResult eff =
      efficiency_check(attr, prediction, default_efficiency_tol(attr));
  if (!eff.pass) {
    throw Error(Errc::efficiency_violation,
                "contributions do not close: residual " + fmt_shortest(eff.residual));
  }
  const int m = static_cast<int>(attr.phi.size());
  const bool have_indices = static_cast<int>(attr.indices.size()) == m;
  const bool have_labels = static_cast<int>(attr.labels.size()) == m;
  const bool have_values = attr.x.size() == m;

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto index_of = [&](int p) { return have_indices ? attr.indices[p] : p; };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double pa = std::abs(attr.phi(a));
    const double pb = std::abs(attr.phi(b));
    if (pa != pb) return pa > pb;
    return index_of(a) < index_of(b);
  });

  SliceReport slice;
  slice.minute_of_day = minute_of_day;
  slice.prediction = prediction;
  slice.base_value = attr.base_value;
  slice.contributions.reserve(m);
  double running = attr.base_value;
  for (int p : order) {
    SliceEntry entry;
    entry.index = index_of(p);
    entry.label = have_labels ? attr.labels[p] : "f" + std::to_string(entry.index);
    entry.value = have_values ? attr.x(p) : 0.0;
    entry.phi = attr.phi(p);
    running += entry.phi;
    entry.cumulative = running;
    slice.contributions.push_back(std::move(entry));
  }
  return slice;
}

TopKTable top_k_table(const std::vector<SliceReport>& slices, int k) {
  if (slices.empty()) {
    throw Error(Errc::empty_set, "no slices to tabulate");
  }
  const int m = static_cast<int>(slices.front().contributions.size());
  if (k < 1 || k > m) {
    throw Error(Errc::k_out_of_range,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");
  }
  TopKTable table;
  table.k = k;
  for (const SliceReport& slice : slices) {
    table.timestamps.push_back(format_clock(slice.minute_of_day));
    std::vector<std::string> row;
    row.reserve(k);
    for (int i = 0; i < k; ++i) row.push_back(slice.contributions[i].label);
    table.labels.push_back(std::move(row));
  }
  return table;
}

BinaryTopMatrix binary_top_matrix(const std::vector<SliceReport>& slices) {
  if (slices.empty()) {
    throw Error(Errc::empty_set, "no slices to tabulate");
  }
  const int m = static_cast<int>(slices.front().contributions.size());
  if (m < 2) {
    throw Error(Errc::empty_set, "need at least two features for a top-2 matrix");
  }
  BinaryTopMatrix matrix;
  matrix.cells = Eigen::MatrixXi::Zero(static_cast<int>(slices.size()), m);
  for (std::size_t r = 0; r < slices.size(); ++r) {
    for (int i = 0; i < 2; ++i) {
      const int col = slices[r].contributions[i].index;
      if (col < 0 || col >= m) {
        throw Error(Errc::label_mismatch,
                    "feature index " + std::to_string(col) + " outside matrix columns");
      }
      matrix.cells(static_cast<int>(r), col) = 1;
    }
  }
  return matrix;
}

DifferenceCurve difference_curve(const std::vector<double>& truth,
                                 const std::vector<double>& forecast,
                                 const OperationalCalendar& cal) {
  if (truth.size() != forecast.size()) {
    throw Error(Errc::length_mismatch,
                "true curve has " + std::to_string(truth.size()) + " points, forecast " +
                    std::to_string(forecast.size()));
  }
  if (truth.empty()) {
    throw Error(Errc::empty_set, "empty curves");
  }
  DifferenceCurve curve;
  curve.truth = truth;
  curve.forecast = forecast;
  curve.diff.resize(truth.size());
  for (std::size_t s = 0; s < truth.size(); ++s) {
    curve.minutes.push_back(cal.minute_of(static_cast<int>(s)));
    curve.diff[s] = truth[s] - forecast[s];
    const double a = std::abs(curve.diff[s]);
    if (a > curve.max_abs) {
      curve.max_abs = a;
      curve.argmax_slot = static_cast<int>(s);
    }
  }
  return curve;
}

CoefficientDistribution coefficient_distribution(const std::vector<HuberModel>& models,
                                                 const OperationalCalendar& cal) {
  if (models.empty()) {
    throw Error(Errc::empty_set, "no models to summarize");
  }
  const int m = static_cast<int>(models.front().weights.size());
  std::vector<std::vector<double>> betas(m);
  std::vector<CoefficientRow> rows(m);
  std::vector<bool> seen(m, false);

  for (const HuberModel& model : models) {
    if (static_cast<int>(model.weights.size()) != m) {
      throw Error(Errc::label_mismatch, "models disagree on feature count");
    }
    for (int p = 0; p < m; ++p) {
      int index = p;
      FeatureKind kind = p == 0   ? FeatureKind::ambient
                         : p == 1 ? FeatureKind::room_avg
                                  : FeatureKind::asat_lag;
      int clock_minute = -1;
      if (model.slot >= 0) {
        const FeatureLabel label = label_sequence(model.slot, cal)[p];
        index = label.index;
        kind = label.kind;
        if (kind == FeatureKind::asat_lag) clock_minute = cal.minute_of(label.clock_slot);
      }
      betas[index].push_back(model.weights(p));
      rows[index].index = index;
      rows[index].kind = kind;
      rows[index].clock_minute = clock_minute;
      seen[index] = true;
    }
  }

  CoefficientDistribution dist;
  for (int i = 0; i < m; ++i) {
    if (!seen[i]) continue;
    CoefficientRow row = rows[i];
    const Eigen::Map<const Eigen::VectorXd> v(betas[i].data(),
                                              static_cast<Eigen::Index>(betas[i].size()));
    row.min = v.minCoeff();
    row.max = v.maxCoeff();
    row.mean = v.mean();
    row.median = median(v);
    dist.rows.push_back(row);
  }
  return dist;
}

std::string slice_filename(int minute_of_day, Format format) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "slice_%02d%02d.%s", minute_of_day / 60,
                minute_of_day % 60, format_ext(format));
  return std::string(buf);
}

// ---- renders ----------------------------------------------------------------

namespace {

constexpr double kSvgW = 800.0;
constexpr double kSvgH = 500.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 40.0, kBottom = 70.0;

std::string svg_open(const std::string& title) {
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
      "font-family=\"sans-serif\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"400\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
         "fill=\"#222222\">" + json_escape(title) + "</text>\n";
  return out;
}

std::string svg_text(double x, double y, const std::string& text, int size,
                     const char* anchor, const std::string& extra = {}) {
  return "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"" + anchor + "\" fill=\"#333333\"" +
         extra + ">" + json_escape(text) + "</text>\n";
}

std::string svg_line(double x1, double y1, double x2, double y2, const char* color,
                     const std::string& extra = {}) {
  return "<line x1=\"" + fmt2(x1) + "\" y1=\"" + fmt2(y1) + "\" x2=\"" + fmt2(x2) +
         "\" y2=\"" + fmt2(y2) + "\" stroke=\"" + color + "\"" + extra + "/>\n";
}

std::string svg_rect(double x, double y, double w, double h, const char* fill,
                     const std::string& extra = {}) {
  return "<rect x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" width=\"" + fmt2(w) +
         "\" height=\"" + fmt2(h) + "\" fill=\"" + fill + "\"" + extra + "/>\n";
}

// Linear map value→pixel with the axis inverted (SVG y grows downward).
struct YScale {
  double lo, hi, top, bottom;
  double operator()(double v) const {
    if (hi == lo) return (top + bottom) / 2;
    return bottom - (v - lo) / (hi - lo) * (bottom - top);
  }
};

std::string slice_json(const SliceReport& slice) {
  std::string out = "{\n";
  out += "  \"timestamp\": \"" + format_clock(slice.minute_of_day) + "\",\n";
  out += "  \"base_value\": " + fmt6(slice.base_value) + ",\n";
  out += "  \"prediction\": " + fmt6(slice.prediction) + ",\n";
  out += "  \"contributions\": [";
  for (std::size_t i = 0; i < slice.contributions.size(); ++i) {
    const SliceEntry& e = slice.contributions[i];
    if (i) out += ",";
    out += "\n    {\"index\": " + std::to_string(e.index);
    out += ", \"label\": \"" + json_escape(e.label) + "\"";
    out += ", \"value\": " + fmt6(e.value);
    out += ", \"phi\": " + fmt6(e.phi);
    out += ", \"cumulative\": " + fmt6(e.cumulative) + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string slice_csv(const SliceReport& slice) {
  std::string out = "label,value,phi,cumulative\n";
  for (const SliceEntry& e : slice.contributions) {
    out += e.label + "," + fmt6(e.value) + "," + fmt6(e.phi) + "," +
           fmt6(e.cumulative) + "\n";
  }
  return out;
}

std::string slice_svg(const SliceReport& slice) {
  const int m = static_cast<int>(slice.contributions.size());
  double lo = std::min(slice.base_value, slice.prediction);
  double hi = std::max(slice.base_value, slice.prediction);
  for (const SliceEntry& e : slice.contributions) {
    lo = std::min(lo, e.cumulative);
    hi = std::max(hi, e.cumulative);
  }
  const double pad = std::max(0.05 * (hi - lo), 0.1);
  const YScale ys{lo - pad, hi + pad, kTop, kSvgH - kBottom};

  std::string out =
      svg_open("Forecast waterfall at " + format_clock(slice.minute_of_day));
  // y axis with three reference labels
  out += svg_line(kLeft, kTop, kLeft, kSvgH - kBottom, "#888888");
  for (double v : {ys.lo, (ys.lo + ys.hi) / 2, ys.hi}) {
    out += svg_text(kLeft - 6, ys(v) + 3, fmt2(v), 10, "end");
    out += svg_line(kLeft, ys(v), kSvgW - kRight, ys(v), "#eeeeee");
  }

  const double step = (kSvgW - kLeft - kRight) / (m + 2);
  const double bar = step * 0.7;
  // base marker
  out += svg_line(kLeft, ys(slice.base_value), kSvgW - kRight, ys(slice.base_value),
                  "#888888", " stroke-dasharray=\"4 3\"");
  out += svg_text(kLeft + step / 2, ys(slice.base_value) - 5,
                  "base " + fmt2(slice.base_value), 10, "middle");

  double running = slice.base_value;
  for (int i = 0; i < m; ++i) {
    const SliceEntry& e = slice.contributions[i];
    const double x = kLeft + step * (i + 1) + (step - bar) / 2;
    const double y0 = ys(running);
    const double y1 = ys(e.cumulative);
    const char* color = e.phi >= 0 ? "#2a9d8f" : "#e76f51";
    out += svg_rect(x, std::min(y0, y1), bar, std::max(std::abs(y1 - y0), 0.5), color);
    if (i < 12) {  // label only the heavy hitters; 39 texts would collide
      out += svg_text(x + bar / 2, kSvgH - kBottom + 12, e.label, 7, "end",
                      " transform=\"rotate(-60 " + fmt2(x + bar / 2) + " " +
                          fmt2(kSvgH - kBottom + 12) + ")\"");
    }
    running = e.cumulative;
  }
  // prediction marker
  out += svg_line(kLeft, ys(slice.prediction), kSvgW - kRight, ys(slice.prediction),
                  "#1d3557", " stroke-dasharray=\"2 2\"");
  out += svg_text(kSvgW - kRight - 4, ys(slice.prediction) - 5,
                  "prediction " + fmt2(slice.prediction), 10, "end");
  out += "</svg>\n";
  return out;
}

std::string table_json(const TopKTable& table) {
  std::string out = "{\n  \"k\": " + std::to_string(table.k) + ",\n  \"rows\": [";
  for (std::size_t r = 0; r < table.timestamps.size(); ++r) {
    if (r) out += ",";
    out += "\n    {\"timestamp\": \"" + json_escape(table.timestamps[r]) +
           "\", \"features\": [";
    for (std::size_t i = 0; i < table.labels[r].size(); ++i) {
      if (i) out += ", ";
      out += "\"" + json_escape(table.labels[r][i]) + "\"";
    }
    out += "]}";
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string table_csv(const TopKTable& table) {
  std::string out = "timestamp";
  for (int i = 1; i <= table.k; ++i) out += ",feature_" + std::to_string(i);
  out += "\n";
  for (std::size_t r = 0; r < table.timestamps.size(); ++r) {
    out += table.timestamps[r];
    for (const std::string& label : table.labels[r]) out += "," + label;
    out += "\n";
  }
  return out;
}

std::string matrix_json(const BinaryTopMatrix& matrix) {
  std::string out = "{\n  \"rows\": [";
  for (Eigen::Index r = 0; r < matrix.cells.rows(); ++r) {
    if (r) out += ",";
    out += "\n    [";
    for (Eigen::Index c = 0; c < matrix.cells.cols(); ++c) {
      if (c) out += ", ";
      out += std::to_string(matrix.cells(r, c));
    }
    out += "]";
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string matrix_csv(const BinaryTopMatrix& matrix) {
  std::string out;
  for (Eigen::Index r = 0; r < matrix.cells.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cells.cols(); ++c) {
      if (c) out += ",";
      out += std::to_string(matrix.cells(r, c));
    }
    out += "\n";
  }
  return out;
}

std::string matrix_svg(const BinaryTopMatrix& matrix) {
  const Eigen::Index n_rows = matrix.cells.rows();
  const Eigen::Index n_cols = matrix.cells.cols();
  std::string out = svg_open("Top-2 features per forecast slot");
  const double cw = (kSvgW - kLeft - kRight) / static_cast<double>(n_cols);
  const double ch = (kSvgH - kTop - kBottom) / static_cast<double>(n_rows);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      out += svg_rect(kLeft + cw * static_cast<double>(c),
                      kTop + ch * static_cast<double>(r), cw, ch,
                      matrix.cells(r, c) ? "#1d3557" : "#f4f4f4",
                      " stroke=\"#dddddd\" stroke-width=\"0.5\"");
    }
  }
  for (Eigen::Index c = 0; c < n_cols; c += 5) {
    out += svg_text(kLeft + cw * (static_cast<double>(c) + 0.5), kSvgH - kBottom + 14,
                    "f" + std::to_string(c), 9, "middle");
  }
  for (Eigen::Index r = 0; r < n_rows; r += 5) {
    out += svg_text(kLeft - 6, kTop + ch * (static_cast<double>(r) + 0.7),
                    std::to_string(r), 9, "end");
  }
  out += svg_text(kSvgW / 2, kSvgH - 20, "feature index", 11, "middle");
  out += svg_text(14, kTop - 8, "slot", 11, "start");
  out += "</svg>\n";
  return out;
}

std::string curve_json(const DifferenceCurve& curve) {
  std::string out = "{\n";
  out += "  \"argmax_slot\": " + std::to_string(curve.argmax_slot) + ",\n";
  out += "  \"argmax_time\": \"" +
         format_clock(curve.minutes[static_cast<std::size_t>(curve.argmax_slot)]) +
         "\",\n";
  out += "  \"max_abs_diff\": " + fmt6(curve.max_abs) + ",\n";
  out += "  \"points\": [";
  for (std::size_t s = 0; s < curve.diff.size(); ++s) {
    if (s) out += ",";
    out += "\n    {\"slot\": " + std::to_string(s);
    out += ", \"time\": \"" + format_clock(curve.minutes[s]) + "\"";
    out += ", \"true_asat\": " + fmt6(curve.truth[s]);
    out += ", \"forecast_asat\": " + fmt6(curve.forecast[s]);
    out += ", \"diff\": " + fmt6(curve.diff[s]) + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string curve_csv(const DifferenceCurve& curve) {
  std::string out = "slot,time,true_asat,forecast_asat,diff,is_max\n";
  for (std::size_t s = 0; s < curve.diff.size(); ++s) {
    out += std::to_string(s) + "," + format_clock(curve.minutes[s]) + "," +
           fmt6(curve.truth[s]) + "," + fmt6(curve.forecast[s]) + "," +
           fmt6(curve.diff[s]) + "," +
           (static_cast<int>(s) == curve.argmax_slot ? "1" : "0") + "\n";
  }
  return out;
}

std::string curve_svg(const DifferenceCurve& curve) {
  const std::size_t n = curve.diff.size();
  double lo = curve.truth[0], hi = curve.truth[0];
  for (std::size_t s = 0; s < n; ++s) {
    lo = std::min({lo, curve.truth[s], curve.forecast[s]});
    hi = std::max({hi, curve.truth[s], curve.forecast[s]});
  }
  const double pad = std::max(0.05 * (hi - lo), 0.1);
  const YScale ys{lo - pad, hi + pad, kTop, kSvgH - kBottom};
  auto xs = [&](std::size_t s) {
    return n == 1 ? kLeft
                  : kLeft + (kSvgW - kLeft - kRight) * static_cast<double>(s) /
                        static_cast<double>(n - 1);
  };

  std::string out = svg_open("True vs forecast control curve");
  out += svg_line(kLeft, kTop, kLeft, kSvgH - kBottom, "#888888");
  out += svg_line(kLeft, kSvgH - kBottom, kSvgW - kRight, kSvgH - kBottom, "#888888");
  for (double v : {ys.lo, (ys.lo + ys.hi) / 2, ys.hi}) {
    out += svg_text(kLeft - 6, ys(v) + 3, fmt2(v), 10, "end");
  }
  for (std::size_t s = 0; s < n; s += 4) {
    out += svg_text(xs(s), kSvgH - kBottom + 14, format_clock(curve.minutes[s]), 8,
                    "middle");
  }
  auto polyline = [&](const std::vector<double>& v, const char* color,
                      const std::string& extra) {
    std::string pts;
    for (std::size_t s = 0; s < n; ++s) {
      if (s) pts += " ";
      pts += fmt2(xs(s)) + "," + fmt2(ys(v[s]));
    }
    return "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"" + extra + "/>\n";
  };
  out += polyline(curve.truth, "#1d3557", "");
  out += polyline(curve.forecast, "#e76f51", " stroke-dasharray=\"5 3\"");

  const std::size_t am = static_cast<std::size_t>(curve.argmax_slot);
  out += "<circle cx=\"" + fmt2(xs(am)) + "\" cy=\"" + fmt2(ys(curve.truth[am])) +
         "\" r=\"4\" fill=\"none\" stroke=\"#c1121f\" stroke-width=\"1.5\"/>\n";
  out += svg_text(xs(am), ys(curve.truth[am]) - 8,
                  "max |diff| " + fmt2(curve.max_abs) + " at " +
                      format_clock(curve.minutes[am]),
                  10, am > n / 2 ? "end" : "start");
  // legend
  out += svg_line(kLeft + 10, kTop + 10, kLeft + 40, kTop + 10, "#1d3557");
  out += svg_text(kLeft + 46, kTop + 13, "true", 10, "start");
  out += svg_line(kLeft + 90, kTop + 10, kLeft + 120, kTop + 10, "#e76f51",
                  " stroke-dasharray=\"5 3\"");
  out += svg_text(kLeft + 126, kTop + 13, "forecast", 10, "start");
  out += "</svg>\n";
  return out;
}

std::string dist_json(const CoefficientDistribution& dist) {
  std::string out = "{\n  \"rows\": [";
  for (std::size_t i = 0; i < dist.rows.size(); ++i) {
    const CoefficientRow& row = dist.rows[i];
    if (i) out += ",";
    out += "\n    {\"index\": " + std::to_string(row.index);
    out += ", \"kind\": \"" + std::string(kind_name(row.kind)) + "\"";
    out += ", \"clock\": ";
    out += row.clock_minute < 0 ? std::string("null")
                                : "\"" + format_clock(row.clock_minute) + "\"";
    out += ", \"min\": " + fmt6(row.min);
    out += ", \"max\": " + fmt6(row.max);
    out += ", \"mean\": " + fmt6(row.mean);
    out += ", \"median\": " + fmt6(row.median) + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string dist_csv(const CoefficientDistribution& dist) {
  std::string out = "index,kind,clock,min,max,mean,median\n";
  for (const CoefficientRow& row : dist.rows) {
    out += std::to_string(row.index);
    out += ",";
    out += kind_name(row.kind);
    out += ",";
    if (row.clock_minute >= 0) out += format_clock(row.clock_minute);
    out += "," + fmt6(row.min) + "," + fmt6(row.max) + "," + fmt6(row.mean) + "," +
           fmt6(row.median) + "\n";
  }
  return out;
}

[[noreturn]] void reject(const char* what, Format format) {
  throw Error(Errc::unsupported_format,
              std::string(what) + " cannot be rendered as " + format_ext(format));
}

}  // namespace

std::string render(const SliceReport& slice, Format format) {
  switch (format) {
    case Format::json: return slice_json(slice);
    case Format::csv: return slice_csv(slice);
    case Format::svg: return slice_svg(slice);
  }
  reject("slice", format);
}

std::string render(const TopKTable& table, Format format) {
  switch (format) {
    case Format::json: return table_json(table);
    case Format::csv: return table_csv(table);
    default: reject("top-k table", format);
  }
}

std::string render(const BinaryTopMatrix& matrix, Format format) {
  switch (format) {
    case Format::json: return matrix_json(matrix);
    case Format::csv: return matrix_csv(matrix);
    case Format::svg: return matrix_svg(matrix);
  }
  reject("matrix", format);
}

std::string render(const DifferenceCurve& curve, Format format) {
  switch (format) {
    case Format::json: return curve_json(curve);
    case Format::csv: return curve_csv(curve);
    case Format::svg: return curve_svg(curve);
  }
  reject("difference curve", format);
}

std::string render(const CoefficientDistribution& dist, Format format) {
  switch (format) {
    case Format::json: return dist_json(dist);
    case Format::csv: return dist_csv(dist);
    default: reject("coefficient distribution", format);
  }
}

}  // namespace aircast
