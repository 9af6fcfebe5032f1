#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/features/descriptor.hpp"
#include "tsad/windowing.hpp"

namespace tsad {

enum class RowNorm { none, minmax, median_iqr, mean_std };

inline const char* to_string(RowNorm m) noexcept {
  switch (m) {
    case RowNorm::none: return "none";
    case RowNorm::minmax: return "minmax";
    case RowNorm::median_iqr: return "median-iqr";
    case RowNorm::mean_std: return "mean-std";
  }
  return "none";
}

inline RowNorm parse_row_norm(const std::string& s) {
  if (s == "none") return RowNorm::none;
  if (s == "minmax") return RowNorm::minmax;
  if (s == "median-iqr") return RowNorm::median_iqr;
  if (s == "mean-std") return RowNorm::mean_std;
  raise(Errc::unknown_method, s);
}

namespace detail {

/// Linear-interpolation quantile (the "type 7" convention) on sorted data.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

/// In-place per-row transform. Degenerate rows (zero denominator) become
/// all-zeros; constant windows are legitimate data, not errors.
inline void normalize_row(std::span<double> row, RowNorm method) {
  if (method == RowNorm::none || row.empty()) return;
  const std::size_t n = row.size();
  double center = 0.0, scale = 0.0;
  switch (method) {
    case RowNorm::minmax: {
      const auto [mn, mx] = std::minmax_element(row.begin(), row.end());
      center = *mn;
      scale = *mx - *mn;
      break;
    }
    case RowNorm::median_iqr: {
      std::vector<double> sorted(row.begin(), row.end());
      std::sort(sorted.begin(), sorted.end());
      center = quantile_sorted(sorted, 0.5);
      scale = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
      break;
    }
    case RowNorm::mean_std: {
      double mean = 0.0;
      for (double v : row) mean += v;
      mean /= static_cast<double>(n);
      double ss = 0.0;
      for (double v : row) ss += (v - mean) * (v - mean);
      center = mean;
      scale = std::sqrt(ss / static_cast<double>(n));  // population sigma
      break;
    }
    case RowNorm::none: return;
  }
  if (scale == 0.0 || !std::isfinite(scale)) {
    std::fill(row.begin(), row.end(), 0.0);
  } else {
    for (double& v : row) v = (v - center) / scale;
  }
}

}  // namespace detail

/// Horizontal normalization: each window row transformed independently.
/// Labels, start indices and metadata pass through unchanged.
inline WindowMatrix normalize_rows(const WindowMatrix& wm, RowNorm method) {
  WindowMatrix out = wm;
  if (method == RowNorm::none) return out;
  for (std::size_t i = 0; i < out.rows.rows(); ++i) detail::normalize_row(out.rows.row(i), method);
  return out;
}

/// Vertical normalization: z-scores every feature column with population
/// sigma. Constant columns map to all-zeros. Input must be pruned (finite).
inline FeatureMatrix normalize_feature_columns(const FeatureMatrix& fm) {
  if (!fm.rows.all_finite())
    raise(Errc::non_finite_input, "feature matrix must be pruned before column normalization");
  FeatureMatrix out = fm;
  const std::size_t rows = out.rows.rows(), cols = out.rows.cols();
  if (rows == 0) return out;
  for (std::size_t j = 0; j < cols; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mean += out.rows(i, j);
    mean /= static_cast<double>(rows);
    double ss = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double d = out.rows(i, j) - mean;
      ss += d * d;
    }
    const double sigma = std::sqrt(ss / static_cast<double>(rows));
    if (sigma == 0.0) {
      for (std::size_t i = 0; i < rows; ++i) out.rows(i, j) = 0.0;
    } else {
      for (std::size_t i = 0; i < rows; ++i) out.rows(i, j) = (out.rows(i, j) - mean) / sigma;
    }
  }
  return out;
}

}  // namespace tsad
