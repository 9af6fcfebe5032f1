#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsad {

/// A univariate series with optional point-level ground truth. Immutable by
/// convention once loaded; every pipeline stage takes it by const reference.
struct TimeSeries {
  std::string id;
  std::vector<double> values;
  std::vector<std::uint8_t> labels;  // empty means unlabeled; else one 0/1 per point
  std::string source;
  std::optional<double> sampling_rate;
  std::optional<std::size_t> train_end;  // 1-based index from archive filenames; informational

  std::size_t size() const noexcept { return values.size(); }
  bool has_labels() const noexcept { return !labels.empty(); }
};

}  // namespace tsad
