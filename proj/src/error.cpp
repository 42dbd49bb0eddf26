#include "aircast/error.hpp"

namespace aircast {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_timestamp: return "MalformedTimestamp";
    case Errc::non_numeric_value: return "NonNumericValue";
    case Errc::duplicate_timestamp: return "DuplicateTimestamp";
    case Errc::missing_column: return "MissingColumn";
    case Errc::gap_too_large: return "GapTooLarge";
    case Errc::empty_input: return "EmptyInput";
    case Errc::missing_day: return "MissingDay";
    case Errc::slot_out_of_range: return "SlotOutOfRange";
    case Errc::insufficient_history: return "InsufficientHistory";
    case Errc::singular_system: return "SingularSystem";
    case Errc::not_enough_rows: return "NotEnoughRows";
    case Errc::label_mismatch: return "LabelMismatch";
    case Errc::empty_background: return "EmptyBackground";
    case Errc::too_many_features: return "TooManyFeatures";
    case Errc::empty_set: return "EmptySet";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::efficiency_violation: return "EfficiencyViolation";
    case Errc::unsupported_format: return "UnsupportedFormat";
    case Errc::k_out_of_range: return "KOutOfRange";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

}  // namespace aircast
