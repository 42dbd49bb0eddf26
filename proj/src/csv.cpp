#include "aircast/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "aircast/error.hpp"

namespace aircast {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

double parse_value(const std::string& cell, long row, const std::string& col) {
  const std::string t = trim(cell);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || t.empty() || !std::isfinite(v)) {
    throw Error(Errc::non_numeric_value,
                "row " + std::to_string(row) + ", column '" + col +
                    "': not a finite number: '" + t + "'");
  }
  return v;
}

}  // namespace

ColumnSchema parse_schema_spec(const std::string& spec) {
  ColumnSchema schema;
  if (spec.empty()) return schema;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t pos = spec.find(',', start);
    if (pos == std::string::npos) pos = spec.size();
    const std::string item = trim(spec.substr(start, pos - start));
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) {
        throw Error(Errc::config_invalid,
                    "schema entry '" + item + "' is not key=value");
      }
      const std::string key = trim(item.substr(0, eq));
      const std::string val = trim(item.substr(eq + 1));
      if (val.empty()) {
        throw Error(Errc::config_invalid, "schema entry '" + item + "' has empty column name");
      }
      if (key == "ts") schema.ts = val;
      else if (key == "asat") schema.asat = val;
      else if (key == "at") schema.ambient = val;
      else if (key == "rt") schema.room_avg = val;
      else {
        throw Error(Errc::config_invalid, "unknown schema key '" + key + "'");
      }
    }
    start = pos + 1;
  }
  return schema;
}

std::vector<Observation> parse_csv(std::istream& in, const ColumnSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::empty_input, "input has no header row");
  }
  // Strip a UTF-8 BOM if some exporter left one behind.
  if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0) {
    line.erase(0, 3);
  }
  const std::vector<std::string> header = split_csv_line(line);
  auto col_of = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return static_cast<int>(i);
    }
    throw Error(Errc::missing_column, "column '" + name + "' not found in header");
  };
  const int c_ts = col_of(schema.ts);
  const int c_asat = col_of(schema.asat);
  const int c_at = col_of(schema.ambient);
  const int c_rt = col_of(schema.room_avg);
  const int max_col = std::max({c_ts, c_asat, c_at, c_rt});

  std::vector<Observation> rows;
  long row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;  // tolerate trailing blank lines
    const std::vector<std::string> cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) <= max_col) {
      throw Error(Errc::missing_column,
                  "row " + std::to_string(row_no) + ": expected at least " +
                      std::to_string(max_col + 1) + " columns, got " +
                      std::to_string(cells.size()));
    }
    Observation obs;
    const std::string ts_text = trim(cells[c_ts]);
    if (!parse_timestamp(ts_text, obs.ts)) {
      throw Error(Errc::malformed_timestamp,
                  "row " + std::to_string(row_no) + ", column '" + schema.ts +
                      "': bad timestamp '" + ts_text + "'");
    }
    // Sensor data is quarter-hourly; anything off the grid is a bad export.
    if (obs.ts.minute_of_day % 15 != 0) {
      throw Error(Errc::malformed_timestamp,
                  "row " + std::to_string(row_no) + ", column '" + schema.ts +
                      "': timestamp '" + ts_text + "' not on 15-minute grid");
    }
    obs.asat = parse_value(cells[c_asat], row_no, schema.asat);
    obs.ambient = parse_value(cells[c_at], row_no, schema.ambient);
    obs.room_avg = parse_value(cells[c_rt], row_no, schema.room_avg);
    rows.push_back(obs);
  }
  if (rows.empty()) {
    throw Error(Errc::empty_input, "input has a header but no data rows");
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Observation& a, const Observation& b) { return a.ts < b.ts; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].ts == rows[i - 1].ts) {
      throw Error(Errc::duplicate_timestamp,
                  "duplicate timestamp " + format_timestamp(rows[i].ts));
    }
  }
  return rows;
}

std::vector<Observation> parse_csv_file(const std::string& path,
                                        const ColumnSchema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open '" + path + "'");
  }
  return parse_csv(in, schema);
}

}  // namespace aircast
