#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tsad/detail/fft.hpp"
#include "tsad/error.hpp"
#include "tsad/features/descriptor.hpp"
#include "tsad/normalize.hpp"

namespace tsad {

namespace detail {

inline double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

/// Per-window evaluation context. Caches the handful of intermediates shared
/// by many kernels (mean, central moments, sorted copy, spectrum) so that a
/// full catalog pass touches each only once. compute_feature builds a fresh
/// context per call, so standalone and batched evaluation are bit-identical.
class WindowContext {
 public:
  explicit WindowContext(std::span<const double> x) : x_(x) {}

  std::span<const double> x() const { return x_; }
  std::size_t n() const { return x_.size(); }

  double mean() {
    if (!mean_) {
      double s = 0.0;
      for (double v : x_) s += v;
      mean_ = s / static_cast<double>(n());
    }
    return *mean_;
  }

  // population central moments m2, m3, m4
  double m2() {
    central();
    return m2_;
  }
  double m3() {
    central();
    return m3_;
  }
  double m4() {
    central();
    return m4_;
  }

  double sigma() { return std::sqrt(m2()); }

  const std::vector<double>& sorted() {
    if (!sorted_ready_) {
      sorted_.assign(x_.begin(), x_.end());
      std::sort(sorted_.begin(), sorted_.end());
      sorted_ready_ = true;
    }
    return sorted_;
  }

  const std::vector<std::complex<double>>& spectrum() {
    if (!spectrum_ready_) {
      spectrum_ = dft(x_);
      spectrum_ready_ = true;
    }
    return spectrum_;
  }

 private:
  void central() {
    if (moments_ready_) return;
    const double mu = mean();
    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double v : x_) {
      const double d = v - mu;
      const double d2 = d * d;
      s2 += d2;
      s3 += d2 * d;
      s4 += d2 * d2;
    }
    const double inv = 1.0 / static_cast<double>(n());
    m2_ = s2 * inv;
    m3_ = s3 * inv;
    m4_ = s4 * inv;
    moments_ready_ = true;
  }

  std::span<const double> x_;
  std::optional<double> mean_;
  double m2_ = 0.0, m3_ = 0.0, m4_ = 0.0;
  bool moments_ready_ = false;
  std::vector<double> sorted_;
  bool sorted_ready_ = false;
  std::vector<std::complex<double>> spectrum_;
  bool spectrum_ready_ = false;
};

inline double autocorrelation_at(WindowContext& ctx, std::size_t lag) {
  const auto x = ctx.x();
  const std::size_t n = x.size();
  if (lag >= n) return nan_value();
  const double mu = ctx.mean();
  const double var = ctx.m2();
  double s = 0.0;
  for (std::size_t t = 0; t + lag < n; ++t) s += (x[t] - mu) * (x[t + lag] - mu);
  return s / (static_cast<double>(n - lag) * var);
}

/// Durbin-Levinson recursion over the autocorrelation sequence.
inline double partial_autocorrelation_at(WindowContext& ctx, std::size_t lag) {
  if (lag == 0) return 1.0;
  std::vector<double> r(lag + 1);
  r[0] = 1.0;
  for (std::size_t j = 1; j <= lag; ++j) {
    r[j] = autocorrelation_at(ctx, j);
    if (!std::isfinite(r[j])) return nan_value();
  }
  std::vector<double> phi_prev(lag + 1, 0.0), phi(lag + 1, 0.0);
  phi_prev[1] = r[1];
  if (lag == 1) return r[1];
  double last = r[1];
  for (std::size_t m = 2; m <= lag; ++m) {
    double num = r[m], den = 1.0;
    for (std::size_t k = 1; k < m; ++k) {
      num -= phi_prev[k] * r[m - k];
      den -= phi_prev[k] * r[k];
    }
    const double pm = num / den;
    for (std::size_t k = 1; k < m; ++k) phi[k] = phi_prev[k] - pm * phi_prev[m - k];
    phi[m] = pm;
    phi_prev = phi;
    last = pm;
  }
  return last;
}

struct TrendStats {
  double slope, intercept, rvalue, stderr_slope;
};

/// Least squares of x against the index t = 0..n-1. The residual sum is
/// accumulated explicitly rather than via the algebraic identity, which
/// cancels badly on near-perfect fits.
inline TrendStats linear_trend(WindowContext& ctx) {
  const auto x = ctx.x();
  const std::size_t n = x.size();
  const double tbar = static_cast<double>(n - 1) / 2.0;
  const double mu = ctx.mean();
  double stt = 0.0, sxt = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double dt = static_cast<double>(t) - tbar;
    stt += dt * dt;
    sxt += dt * (x[t] - mu);
  }
  TrendStats out{};
  out.slope = sxt / stt;
  out.intercept = mu - out.slope * tbar;
  const double sxx = ctx.m2() * static_cast<double>(n);
  out.rvalue = sxt / std::sqrt(stt * sxx);
  double rss = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double resid = x[t] - (out.intercept + out.slope * static_cast<double>(t));
    rss += resid * resid;
  }
  out.stderr_slope = std::sqrt(rss / static_cast<double>(n - 2) / stt);
  return out;
}

inline double binned_entropy(WindowContext& ctx, std::size_t bins) {
  const auto x = ctx.x();
  const auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
  const double mn = *mn_it, mx = *mx_it;
  if (mx == mn) return 0.0;
  std::vector<std::size_t> counts(bins, 0);
  const double scale = static_cast<double>(bins) / (mx - mn);
  for (double v : x) {
    auto b = static_cast<std::size_t>((v - mn) * scale);
    if (b >= bins) b = bins - 1;
    ++counts[b];
  }
  double h = 0.0;
  const double inv = 1.0 / static_cast<double>(x.size());
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) * inv;
    h -= p * std::log(p);
  }
  return h;
}

inline double number_peaks(std::span<const double> x, std::size_t support) {
  const std::size_t n = x.size();
  if (n < 2 * support + 1) return 0.0;
  std::size_t peaks = 0;
  for (std::size_t i = support; i + support < n; ++i) {
    bool is_peak = true;
    for (std::size_t j = 1; j <= support && is_peak; ++j) {
      if (!(x[i] > x[i - j] && x[i] > x[i + j])) is_peak = false;
    }
    if (is_peak) ++peaks;
  }
  return static_cast<double>(peaks);
}

/// Chebyshev-distance template matching shared by the sample/approximate
/// entropy kernels.
inline bool templates_match(std::span<const double> x, std::size_t i, std::size_t j,
                            std::size_t m, double r) {
  for (std::size_t u = 0; u < m; ++u) {
    if (std::abs(x[i + u] - x[j + u]) > r) return false;
  }
  return true;
}

inline double sample_entropy(WindowContext& ctx, std::size_t m, double r_factor) {
  const auto x = ctx.x();
  const std::size_t n = x.size();
  if (n < m + 2) return nan_value();
  const double r = r_factor * ctx.sigma();
  // templates i = 0..n-m-1 for both lengths, pairs i < j, self-matches excluded
  const std::size_t count = n - m;
  std::size_t b = 0, a = 0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (templates_match(x, i, j, m, r)) {
        ++b;
        if (templates_match(x, i, j, m + 1, r)) ++a;
      }
    }
  }
  if (b == 0 || a == 0) return nan_value();
  return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

inline double approximate_entropy(WindowContext& ctx, std::size_t m, double r_factor) {
  const auto x = ctx.x();
  const std::size_t n = x.size();
  if (n < m + 2) return nan_value();
  const double r = r_factor * ctx.sigma();
  const auto phi = [&](std::size_t mm) {
    const std::size_t count = n - mm + 1;
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t matches = 0;
      for (std::size_t j = 0; j < count; ++j) {
        if (templates_match(x, i, j, mm, r)) ++matches;
      }
      s += std::log(static_cast<double>(matches) / static_cast<double>(count));
    }
    return s / static_cast<double>(count);
  };
  return phi(m) - phi(m + 1);
}

inline double permutation_entropy(std::span<const double> x, std::size_t order,
                                  std::size_t delay) {
  const std::size_t n = x.size();
  const std::size_t span = (order - 1) * delay;
  if (n <= span) return nan_value();
  const std::size_t total = n - span;
  // Lehmer code of the stable argsort of each tuple (ties keep index order).
  std::vector<std::size_t> counts;
  std::size_t max_code = 1;
  for (std::size_t i = 2; i <= order; ++i) max_code *= i;
  counts.assign(max_code, 0);
  std::vector<std::size_t> idx(order);
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t i = 0; i < order; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return x[t + a * delay] < x[t + b * delay];
    });
    std::size_t code = 0;
    for (std::size_t i = 0; i < order; ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < order; ++j) {
        if (idx[j] < idx[i]) ++smaller;
      }
      code = code * (order - i) + smaller;
    }
    ++counts[code];
  }
  double h = 0.0;
  const double inv = 1.0 / static_cast<double>(total);
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) * inv;
    h -= p * std::log(p);
  }
  return h;
}

inline double eval_feature(const FeatureDescriptor& d, WindowContext& ctx) {
  const auto x = ctx.x();
  const std::size_t n = x.size();
  switch (d.id) {
    case FeatureId::mean:
      return ctx.mean();
    case FeatureId::median:
      return quantile_sorted(ctx.sorted(), 0.5);
    case FeatureId::minimum:
      return *std::min_element(x.begin(), x.end());
    case FeatureId::maximum:
      return *std::max_element(x.begin(), x.end());
    case FeatureId::sum: {
      double s = 0.0;
      for (double v : x) s += v;
      return s;
    }
    case FeatureId::variance:
      return ctx.m2();
    case FeatureId::standard_deviation:
      return ctx.sigma();
    case FeatureId::root_mean_square: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s / static_cast<double>(n));
    }
    case FeatureId::abs_energy: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    }
    case FeatureId::skewness:
      return ctx.m3() / std::pow(ctx.m2(), 1.5);
    case FeatureId::kurtosis:
      return ctx.m4() / (ctx.m2() * ctx.m2()) - 3.0;
    case FeatureId::quantile:
      return quantile_sorted(ctx.sorted(), d.param("q", 0.5));
    case FeatureId::interquartile_range:
      return quantile_sorted(ctx.sorted(), 0.75) - quantile_sorted(ctx.sorted(), 0.25);
    case FeatureId::mean_abs_change: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) s += std::abs(x[i + 1] - x[i]);
      return s / static_cast<double>(n - 1);
    }
    case FeatureId::mean_change:
      return (x[n - 1] - x[0]) / static_cast<double>(n - 1);
    case FeatureId::absolute_sum_of_changes: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) s += std::abs(x[i + 1] - x[i]);
      return s;
    }
    case FeatureId::cid_ce: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double diff = x[i + 1] - x[i];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
    case FeatureId::count_above_mean: {
      const double mu = ctx.mean();
      std::size_t c = 0;
      for (double v : x) c += v > mu;
      return static_cast<double>(c);
    }
    case FeatureId::count_below_mean: {
      const double mu = ctx.mean();
      std::size_t c = 0;
      for (double v : x) c += v < mu;
      return static_cast<double>(c);
    }
    case FeatureId::longest_strike_above_mean: {
      const double mu = ctx.mean();
      std::size_t best = 0, cur = 0;
      for (double v : x) {
        cur = v > mu ? cur + 1 : 0;
        best = std::max(best, cur);
      }
      return static_cast<double>(best);
    }
    case FeatureId::longest_strike_below_mean: {
      const double mu = ctx.mean();
      std::size_t best = 0, cur = 0;
      for (double v : x) {
        cur = v < mu ? cur + 1 : 0;
        best = std::max(best, cur);
      }
      return static_cast<double>(best);
    }
    case FeatureId::number_mean_crossings: {
      // sign changes of x - mean; zeros attach to the previous sign
      const double mu = ctx.mean();
      int prev = 0;
      std::size_t crossings = 0;
      for (double v : x) {
        const int s = v > mu ? 1 : (v < mu ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++crossings;
        prev = s;
      }
      return static_cast<double>(crossings);
    }
    case FeatureId::first_location_of_maximum: {
      const auto it = std::max_element(x.begin(), x.end());
      return static_cast<double>(it - x.begin()) / static_cast<double>(n);
    }
    case FeatureId::last_location_of_maximum: {
      const double mx = *std::max_element(x.begin(), x.end());
      std::size_t last = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == mx) last = i;
      }
      return static_cast<double>(last) / static_cast<double>(n);
    }
    case FeatureId::first_location_of_minimum: {
      const auto it = std::min_element(x.begin(), x.end());
      return static_cast<double>(it - x.begin()) / static_cast<double>(n);
    }
    case FeatureId::last_location_of_minimum: {
      const double mn = *std::min_element(x.begin(), x.end());
      std::size_t last = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == mn) last = i;
      }
      return static_cast<double>(last) / static_cast<double>(n);
    }
    case FeatureId::has_duplicate_max: {
      const double mx = *std::max_element(x.begin(), x.end());
      return std::count(x.begin(), x.end(), mx) > 1 ? 1.0 : 0.0;
    }
    case FeatureId::has_duplicate_min: {
      const double mn = *std::min_element(x.begin(), x.end());
      return std::count(x.begin(), x.end(), mn) > 1 ? 1.0 : 0.0;
    }
    case FeatureId::unique_value_ratio: {
      const auto& s = ctx.sorted();
      std::size_t distinct = 1;
      for (std::size_t i = 1; i < s.size(); ++i) distinct += s[i] != s[i - 1];
      return static_cast<double>(distinct) / static_cast<double>(n);
    }
    case FeatureId::autocorrelation:
      return autocorrelation_at(ctx, static_cast<std::size_t>(d.param("lag", 1)));
    case FeatureId::partial_autocorrelation:
      return partial_autocorrelation_at(ctx, static_cast<std::size_t>(d.param("lag", 1)));
    case FeatureId::c3: {
      const auto lag = static_cast<std::size_t>(d.param("lag", 1));
      if (n <= 2 * lag) return nan_value();
      double s = 0.0;
      for (std::size_t t = 0; t + 2 * lag < n; ++t) s += x[t] * x[t + lag] * x[t + 2 * lag];
      return s / static_cast<double>(n - 2 * lag);
    }
    case FeatureId::time_reversal_asymmetry: {
      const auto lag = static_cast<std::size_t>(d.param("lag", 1));
      if (n <= 2 * lag) return nan_value();
      double s = 0.0;
      for (std::size_t t = 0; t + 2 * lag < n; ++t) {
        const double a = x[t + 2 * lag], b = x[t + lag], c = x[t];
        s += a * a * b - b * c * c;
      }
      return s / static_cast<double>(n - 2 * lag);
    }
    case FeatureId::fft_real:
    case FeatureId::fft_imag:
    case FeatureId::fft_abs:
    case FeatureId::fft_angle: {
      const auto k = static_cast<std::size_t>(d.param("k", 0));
      if (k >= n) return nan_value();
      const auto& c = ctx.spectrum()[k];
      if (d.id == FeatureId::fft_real) return c.real();
      if (d.id == FeatureId::fft_imag) return c.imag();
      if (d.id == FeatureId::fft_abs) return std::abs(c);
      return std::atan2(c.imag(), c.real());
    }
    case FeatureId::spectral_centroid:
    case FeatureId::spectral_variance:
    case FeatureId::spectral_skewness:
    case FeatureId::spectral_kurtosis: {
      // moments of the normalized power spectrum over k = 0..floor(n/2)
      const auto& spec = ctx.spectrum();
      const std::size_t kmax = n / 2;
      double total = 0.0;
      for (std::size_t k = 0; k <= kmax; ++k) total += std::norm(spec[k]);
      if (total == 0.0) return nan_value();
      double centroid = 0.0;
      for (std::size_t k = 0; k <= kmax; ++k)
        centroid += static_cast<double>(k) * std::norm(spec[k]) / total;
      if (d.id == FeatureId::spectral_centroid) return centroid;
      double v2 = 0.0, v3 = 0.0, v4 = 0.0;
      for (std::size_t k = 0; k <= kmax; ++k) {
        const double p = std::norm(spec[k]) / total;
        const double dk = static_cast<double>(k) - centroid;
        v2 += dk * dk * p;
        v3 += dk * dk * dk * p;
        v4 += dk * dk * dk * dk * p;
      }
      if (d.id == FeatureId::spectral_variance) return v2;
      if (d.id == FeatureId::spectral_skewness) return v3 / std::pow(v2, 1.5);
      return v4 / (v2 * v2);
    }
    case FeatureId::binned_entropy:
      return binned_entropy(ctx, static_cast<std::size_t>(d.param("bins", 10)));
    case FeatureId::ratio_beyond_r_sigma: {
      const double r = d.param("r", 1.0);
      const double mu = ctx.mean();
      const double threshold = r * ctx.sigma();
      std::size_t c = 0;
      for (double v : x) c += std::abs(v - mu) > threshold;
      return static_cast<double>(c) / static_cast<double>(n);
    }
    case FeatureId::number_peaks:
      return number_peaks(x, static_cast<std::size_t>(d.param("n", 1)));
    case FeatureId::linear_trend_slope:
      return linear_trend(ctx).slope;
    case FeatureId::linear_trend_intercept:
      return linear_trend(ctx).intercept;
    case FeatureId::linear_trend_rvalue:
      return linear_trend(ctx).rvalue;
    case FeatureId::linear_trend_stderr:
      return linear_trend(ctx).stderr_slope;
    case FeatureId::sample_entropy:
      return sample_entropy(ctx, static_cast<std::size_t>(d.param("m", 2)), d.param("r", 0.2));
    case FeatureId::approximate_entropy:
      return approximate_entropy(ctx, static_cast<std::size_t>(d.param("m", 2)),
                                 d.param("r", 0.2));
    case FeatureId::permutation_entropy:
      return permutation_entropy(x, static_cast<std::size_t>(d.param("order", 3)),
                                 static_cast<std::size_t>(d.param("delay", 1)));
  }
  raise(Errc::unknown_feature, d.name);
}

}  // namespace detail

/// Evaluates one catalog feature on one window. Values may come out
/// non-finite (zero-variance denominators and the like); pruning strips those
/// columns downstream rather than suppressing them here.
inline double compute_feature(const FeatureDescriptor& d, std::span<const double> window) {
  detail::WindowContext ctx(window);
  return detail::eval_feature(d, ctx);
}

}  // namespace tsad
