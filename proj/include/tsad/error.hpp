#pragma once

#include <stdexcept>
#include <string>

namespace tsad {

enum class Errc {
  // series loading and curation
  missing_column,
  non_finite_value,
  bad_label,
  empty_series,
  bad_filename_convention,
  indices_out_of_range,
  missing_labels,
  degenerate_series,
  too_short,
  // windowing
  window_larger_than_series,
  // normalization
  unknown_method,
  // feature construction
  window_too_small,
  unknown_feature,
  all_columns_dropped,
  // detectors
  degenerate_input,
  non_finite_input,
  dimension_mismatch,
  too_few_rows,
  // evaluation
  single_class,
  undefined_entry,
  all_zero_differences,
  unsupported_m,
  // runner
  io_error,
  insufficient_data,
  config_error,
};

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::missing_column: return "MissingColumn";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::bad_label: return "BadLabel";
    case Errc::empty_series: return "EmptySeries";
    case Errc::bad_filename_convention: return "BadFilenameConvention";
    case Errc::indices_out_of_range: return "IndicesOutOfRange";
    case Errc::missing_labels: return "MissingLabels";
    case Errc::degenerate_series: return "DegenerateSeries";
    case Errc::too_short: return "TooShort";
    case Errc::window_larger_than_series: return "WindowLargerThanSeries";
    case Errc::unknown_method: return "UnknownMethod";
    case Errc::window_too_small: return "WindowTooSmall";
    case Errc::unknown_feature: return "UnknownFeature";
    case Errc::all_columns_dropped: return "AllColumnsDropped";
    case Errc::degenerate_input: return "DegenerateInput";
    case Errc::non_finite_input: return "NonFiniteInput";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::too_few_rows: return "TooFewRows";
    case Errc::single_class: return "SingleClass";
    case Errc::undefined_entry: return "UndefinedEntry";
    case Errc::all_zero_differences: return "AllZeroDifferences";
    case Errc::unsupported_m: return "UnsupportedM";
    case Errc::io_error: return "IoError";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

/// Library-wide exception carrying a stable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace tsad
