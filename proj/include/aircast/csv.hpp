#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aircast/timeutil.hpp"

namespace aircast {

// One raw sensor reading. Temperatures in degrees Celsius.
struct Observation {
  Timestamp ts;
  double asat = 0.0;      // supply air temperature
  double ambient = 0.0;   // outdoor temperature
  double room_avg = 0.0;  // building-average room temperature
};

// Maps logical fields to CSV column names. Extra columns are ignored.
struct ColumnSchema {
  std::string ts = "ts";
  std::string asat = "asat";
  std::string ambient = "at";
  std::string room_avg = "rt_avg";
};

// Parse "ts=<col>,asat=<col>,at=<col>,rt=<col>" (any subset, any order)
// on top of the defaults. Unknown keys throw ConfigInvalid.
ColumnSchema parse_schema_spec(const std::string& spec);

// Parse raw observation CSV. Header row required. Rows may arrive in any
// order; output is sorted by timestamp. Throws with the 1-based data row
// number and column name on malformed timestamps, non-numeric or non-finite
// values, duplicate timestamps, and missing columns.
std::vector<Observation> parse_csv(std::istream& in, const ColumnSchema& schema);
std::vector<Observation> parse_csv_file(const std::string& path,
                                        const ColumnSchema& schema);

// Split one CSV record on commas. No quoting: sensor exports here are plain.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace aircast
