#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/matrix.hpp"
#include "tsad/time_series.hpp"

namespace tsad {

/// F x W table of overlapping windows cut from one series. Row i is
/// values[i*stride .. i*stride+W-1]; a window is labeled anomalous iff it
/// contains at least one anomalous point.
struct WindowMatrix {
  std::string series_id;
  std::size_t window_size = 0;
  std::size_t stride = 1;
  Matrix rows;
  std::vector<std::uint8_t> window_labels;  // empty when the series is unlabeled
  std::vector<std::size_t> window_starts;

  std::size_t count() const noexcept { return rows.rows(); }
  bool has_labels() const noexcept { return !window_labels.empty(); }
};

/// Number of full windows of size W at stride alpha over m points:
/// floor((m - W) / alpha) + 1. Trailing points that do not fill a whole
/// window are discarded.
inline std::size_t window_count(std::size_t m, std::size_t window, std::size_t stride) {
  if (window < 1 || stride < 1)
    raise(Errc::config_error, "window and stride must be >= 1");
  if (window > m)
    raise(Errc::window_larger_than_series,
          "W=" + std::to_string(window) + " > m=" + std::to_string(m));
  return (m - window) / stride + 1;
}

inline WindowMatrix slice(const TimeSeries& ts, std::size_t window, std::size_t stride = 1) {
  const std::size_t count = window_count(ts.size(), window, stride);
  WindowMatrix wm;
  wm.series_id = ts.id;
  wm.window_size = window;
  wm.stride = stride;
  wm.rows = Matrix(count, window);
  wm.window_starts.resize(count);
  if (ts.has_labels()) wm.window_labels.assign(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = i * stride;
    wm.window_starts[i] = start;
    auto row = wm.rows.row(i);
    for (std::size_t j = 0; j < window; ++j) row[j] = ts.values[start + j];
    if (ts.has_labels()) {
      for (std::size_t j = 0; j < window; ++j) {
        if (ts.labels[start + j]) {
          wm.window_labels[i] = 1;
          break;
        }
      }
    }
  }
  return wm;
}

}  // namespace tsad
