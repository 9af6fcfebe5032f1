#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tsad/csv.hpp"
#include "tsad/matrix.hpp"

namespace tsad {

enum class CostTier { standard, expensive };

enum class FeatureId {
  mean,
  median,
  minimum,
  maximum,
  sum,
  variance,
  standard_deviation,
  root_mean_square,
  abs_energy,
  skewness,
  kurtosis,
  quantile,
  interquartile_range,
  mean_abs_change,
  mean_change,
  absolute_sum_of_changes,
  cid_ce,
  count_above_mean,
  count_below_mean,
  longest_strike_above_mean,
  longest_strike_below_mean,
  number_mean_crossings,
  first_location_of_maximum,
  last_location_of_maximum,
  first_location_of_minimum,
  last_location_of_minimum,
  has_duplicate_max,
  has_duplicate_min,
  unique_value_ratio,
  autocorrelation,
  partial_autocorrelation,
  c3,
  time_reversal_asymmetry,
  fft_real,
  fft_imag,
  fft_abs,
  fft_angle,
  spectral_centroid,
  spectral_variance,
  spectral_skewness,
  spectral_kurtosis,
  binned_entropy,
  ratio_beyond_r_sigma,
  number_peaks,
  linear_trend_slope,
  linear_trend_intercept,
  linear_trend_rvalue,
  linear_trend_stderr,
  sample_entropy,
  approximate_entropy,
  permutation_entropy,
};

/// Identity of one constructed column: a stable name plus an ordered
/// parameter list. (name, params) is unique within a catalog.
struct FeatureDescriptor {
  FeatureId id{};
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  CostTier tier = CostTier::standard;

  double param(const std::string& key, double fallback) const {
    for (const auto& [k, v] : params) {
      if (k == key) return v;
    }
    return fallback;
  }

  /// Column header in the name__param=value convention,
  /// e.g. "autocorrelation__lag=3" or "quantile__q=0.25".
  std::string column_name() const {
    std::string s = name;
    for (const auto& [k, v] : params) {
      s += "__";
      s += k;
      s += '=';
      if (v == std::floor(v) && std::abs(v) < 1e15) {
        s += std::to_string(static_cast<long long>(v));
      } else {
        s += format_double(v);
      }
    }
    return s;
  }

  bool operator==(const FeatureDescriptor& o) const {
    return name == o.name && params == o.params;
  }
};

/// F x q table of constructed features with column provenance. Columns
/// dropped by pruning are preserved in dropped_columns as an audit trail.
struct FeatureMatrix {
  std::string series_id;
  std::size_t window_size = 0;
  Matrix rows;
  std::vector<FeatureDescriptor> columns;
  std::vector<FeatureDescriptor> dropped_columns;
  std::vector<std::size_t> window_starts;
};

}  // namespace tsad
