#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/features/descriptor.hpp"

namespace tsad {

/// The fixed construction catalog for windows of size W, in canonical order.
/// Parameterized families expand to one descriptor per parameter value; FFT
/// coefficients are clipped to k <= floor(W/2). The standard tier expands to
/// 111 columns for W >= 20 (fewer for smaller W); the expensive entropy trio
/// is appended only when requested.
inline std::vector<FeatureDescriptor> default_catalog(std::size_t window,
                                                      bool include_expensive = false) {
  if (window < 2) raise(Errc::window_too_small, "W=" + std::to_string(window));

  std::vector<FeatureDescriptor> cat;
  cat.reserve(128);
  const auto add = [&](FeatureId id, std::string name,
                       std::vector<std::pair<std::string, double>> params = {},
                       CostTier tier = CostTier::standard) {
    cat.push_back({id, std::move(name), std::move(params), tier});
  };

  // 1. location and scale
  add(FeatureId::mean, "mean");
  add(FeatureId::median, "median");
  add(FeatureId::minimum, "minimum");
  add(FeatureId::maximum, "maximum");
  add(FeatureId::sum, "sum");
  add(FeatureId::variance, "variance");
  add(FeatureId::standard_deviation, "standard_deviation");
  add(FeatureId::root_mean_square, "root_mean_square");
  // 2. energy and shape
  add(FeatureId::abs_energy, "abs_energy");
  add(FeatureId::skewness, "skewness");
  add(FeatureId::kurtosis, "kurtosis");
  // 3. quantiles
  for (double q : {0.1, 0.25, 0.75, 0.9}) add(FeatureId::quantile, "quantile", {{"q", q}});
  add(FeatureId::interquartile_range, "interquartile_range");
  // 4. successive differences
  add(FeatureId::mean_abs_change, "mean_abs_change");
  add(FeatureId::mean_change, "mean_change");
  add(FeatureId::absolute_sum_of_changes, "absolute_sum_of_changes");
  add(FeatureId::cid_ce, "cid_ce");
  // 5. mean-relative counts and runs
  add(FeatureId::count_above_mean, "count_above_mean");
  add(FeatureId::count_below_mean, "count_below_mean");
  add(FeatureId::longest_strike_above_mean, "longest_strike_above_mean");
  add(FeatureId::longest_strike_below_mean, "longest_strike_below_mean");
  add(FeatureId::number_mean_crossings, "number_mean_crossings");
  // 6. extremum locations and duplication
  add(FeatureId::first_location_of_maximum, "first_location_of_maximum");
  add(FeatureId::last_location_of_maximum, "last_location_of_maximum");
  add(FeatureId::first_location_of_minimum, "first_location_of_minimum");
  add(FeatureId::last_location_of_minimum, "last_location_of_minimum");
  add(FeatureId::has_duplicate_max, "has_duplicate_max");
  add(FeatureId::has_duplicate_min, "has_duplicate_min");
  add(FeatureId::unique_value_ratio, "unique_value_ratio");
  // 7. autocorrelations
  for (int lag = 1; lag <= 10; ++lag)
    add(FeatureId::autocorrelation, "autocorrelation", {{"lag", double(lag)}});
  // 8. partial autocorrelations
  for (int lag = 1; lag <= 5; ++lag)
    add(FeatureId::partial_autocorrelation, "partial_autocorrelation", {{"lag", double(lag)}});
  // 9. third-order statistics
  for (int lag = 1; lag <= 3; ++lag) add(FeatureId::c3, "c3", {{"lag", double(lag)}});
  for (int lag = 1; lag <= 3; ++lag)
    add(FeatureId::time_reversal_asymmetry, "time_reversal_asymmetry", {{"lag", double(lag)}});
  // 10. Fourier coefficients of the raw window and spectral moments
  const std::size_t kmax = std::min<std::size_t>(10, window / 2);
  for (std::size_t k = 0; k <= kmax; ++k) {
    add(FeatureId::fft_real, "fft_real", {{"k", double(k)}});
    add(FeatureId::fft_imag, "fft_imag", {{"k", double(k)}});
    add(FeatureId::fft_abs, "fft_abs", {{"k", double(k)}});
    add(FeatureId::fft_angle, "fft_angle", {{"k", double(k)}});
  }
  add(FeatureId::spectral_centroid, "spectral_centroid");
  add(FeatureId::spectral_variance, "spectral_variance");
  add(FeatureId::spectral_skewness, "spectral_skewness");
  add(FeatureId::spectral_kurtosis, "spectral_kurtosis");
  // 11. histogram entropy
  add(FeatureId::binned_entropy, "binned_entropy", {{"bins", 10.0}});
  // 12. tail mass
  for (double r : {1.0, 2.0, 3.0})
    add(FeatureId::ratio_beyond_r_sigma, "ratio_beyond_r_sigma", {{"r", r}});
  // 13. peaks
  for (double n : {1.0, 3.0}) add(FeatureId::number_peaks, "number_peaks", {{"n", n}});
  // 14. linear trend
  add(FeatureId::linear_trend_slope, "linear_trend_slope");
  add(FeatureId::linear_trend_intercept, "linear_trend_intercept");
  add(FeatureId::linear_trend_rvalue, "linear_trend_rvalue");
  add(FeatureId::linear_trend_stderr, "linear_trend_stderr");

  if (include_expensive) {
    add(FeatureId::sample_entropy, "sample_entropy", {{"m", 2.0}, {"r", 0.2}},
        CostTier::expensive);
    add(FeatureId::approximate_entropy, "approximate_entropy", {{"m", 2.0}, {"r", 0.2}},
        CostTier::expensive);
    add(FeatureId::permutation_entropy, "permutation_entropy", {{"order", 3.0}, {"delay", 1.0}},
        CostTier::expensive);
  }
  return cat;
}

}  // namespace tsad
