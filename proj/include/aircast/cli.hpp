#pragma once

#include <string>
#include <vector>

#include "aircast/config.hpp"

namespace aircast {

// Subcommand bodies. They throw aircast::Error; run_cli maps the error code
// to the process exit code and prints the machine-parsable error_code line.
void cmd_ingest(const RunConfig& config);
void cmd_train(const RunConfig& config);
void cmd_forecast(const RunConfig& config, const Date& target_day);
void cmd_explain(const RunConfig& config, const Date& target_day);
void cmd_report(const RunConfig& config);
void cmd_synth(const RunConfig& config);

// Full argv handling (args exclude the program name). Returns the exit
// code: 0 ok, 2 ingest-data errors, 3 not enough history/rows, 4 missing
// day, 1 anything else.
int run_cli(const std::vector<std::string>& args);

int exit_code_for(Errc code);

}  // namespace aircast
