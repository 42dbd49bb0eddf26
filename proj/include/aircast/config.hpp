#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aircast/calendar.hpp"
#include "aircast/csv.hpp"
#include "aircast/model.hpp"
#include "aircast/report.hpp"

namespace aircast {

// Everything a pipeline run needs, resolved from defaults, an optional
// config file, and command-line overrides (in that order).
struct RunConfig {
  std::string data;        // raw input CSV (ingest)
  std::string out = "out"; // output directory; commands exchange files here
  ColumnSchema schema;
  OperationalCalendar cal;
  int max_fill = 2;  // longest forward-fillable gap, in slots

  HuberOptions huber;
  int window_days = 0;  // training window; 0 = all history
  bool pooled = false;  // one shared model instead of per-slot fits

  std::string method = "linear";  // linear | shapley_exact | shapley_mc
  int n_permutations = 2000;
  std::uint64_t seed = 42;
  int max_features = 20;  // exact-enumeration cap

  std::vector<Format> formats = {Format::json, Format::svg};
  int top_k = 2;
  int threads = 1;

  int synth_days = 30;
  Date synth_start{2024, 9, 2};

  void validate() const;  // throws ConfigInvalid
};

// Flat "dotted.key = value" file; '#' starts a comment. Unknown keys are
// rejected rather than silently ignored.
RunConfig load_config(const std::string& path);

// Apply one key/value pair (the config-file grammar; also used by tests).
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace aircast
