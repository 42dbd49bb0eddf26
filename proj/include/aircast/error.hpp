#pragma once

#include <stdexcept>
#include <string>

namespace aircast {

// Every failure the library can report. Names (errc_name) are stable and
// machine-parsable; the CLI prints them as `error_code=<Name>` lines.
enum class Errc {
  malformed_timestamp,
  non_numeric_value,
  duplicate_timestamp,
  missing_column,
  gap_too_large,
  empty_input,
  missing_day,
  slot_out_of_range,
  insufficient_history,
  singular_system,
  not_enough_rows,
  label_mismatch,
  empty_background,
  too_many_features,
  empty_set,
  length_mismatch,
  efficiency_violation,
  unsupported_format,
  k_out_of_range,
  config_invalid,
  io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace aircast
