#pragma once

// Naive reference implementations used to cross-check the library. Everything
// here is written straight from the defining formulas, favoring clarity over
// speed, and deliberately shares no code with the library kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "tsad/features/descriptor.hpp"

namespace oracle {

inline double nan() { return std::numeric_limits<double>::quiet_NaN(); }

inline double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / double(x.size());
}

inline double central_moment(const std::vector<double>& x, int p) {
  const double mu = mean(x);
  double s = 0.0;
  for (double v : x) s += std::pow(v - mu, p);
  return s / double(x.size());
}

/// Type-7 quantile: h = (n-1)p, linear interpolation between order stats.
inline double quantile(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  const double h = (double(x.size()) - 1.0) * p;
  const auto lo = std::size_t(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - double(lo)) * (x[hi] - x[lo]);
}

inline double autocorrelation(const std::vector<double>& x, std::size_t lag) {
  const std::size_t n = x.size();
  if (lag >= n) return nan();
  const double mu = mean(x);
  const double var = central_moment(x, 2);
  double s = 0.0;
  for (std::size_t t = 0; t + lag < n; ++t) s += (x[t] - mu) * (x[t + lag] - mu);
  return s / (double(n - lag) * var);
}

/// PACF via the Yule-Walker equations solved with Gaussian elimination — a
/// different route than the library's Durbin-Levinson recursion.
inline double pacf(const std::vector<double>& x, std::size_t lag) {
  std::vector<double> r(lag + 1);
  r[0] = 1.0;
  for (std::size_t j = 1; j <= lag; ++j) {
    r[j] = autocorrelation(x, j);
    if (!std::isfinite(r[j])) return nan();
  }
  // Toeplitz system A phi = b with A[i][j] = r[|i-j|], b[i] = r[i+1]
  const std::size_t m = lag;
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      a[i][j] = r[i > j ? i - j : j - i];
    a[i][m] = r[i + 1];
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < m; ++i)
      if (std::fabs(a[i][col]) > std::fabs(a[pivot][col])) pivot = i;
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) return nan();
    for (std::size_t i = col + 1; i < m; ++i) {
      const double f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= m; ++j) a[i][j] -= f * a[col][j];
    }
  }
  std::vector<double> phi(m);
  for (std::size_t i = m; i-- > 0;) {
    double s = a[i][m];
    for (std::size_t j = i + 1; j < m; ++j) s -= a[i][j] * phi[j];
    phi[i] = s / a[i][i];
  }
  return phi[m - 1];
}

/// Plain trigonometric-sum DFT coefficient (X_k = sum x_t e^{-2 pi i k t/n}).
inline std::complex<double> dft_coeff(const std::vector<double>& x, std::size_t k) {
  const double n = double(x.size());
  double re = 0.0, im = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double angle = -2.0 * M_PI * double(k) * double(t) / n;
    re += x[t] * std::cos(angle);
    im += x[t] * std::sin(angle);
  }
  return {re, im};
}

inline double spectral_moment(const std::vector<double>& x, int which) {
  const std::size_t kmax = x.size() / 2;
  std::vector<double> power(kmax + 1);
  double total = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const auto c = dft_coeff(x, k);
    power[k] = c.real() * c.real() + c.imag() * c.imag();
    total += power[k];
  }
  if (total == 0.0) return nan();
  double centroid = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) centroid += double(k) * power[k] / total;
  if (which == 1) return centroid;
  double v2 = 0.0, v3 = 0.0, v4 = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const double p = power[k] / total;
    v2 += std::pow(double(k) - centroid, 2) * p;
    v3 += std::pow(double(k) - centroid, 3) * p;
    v4 += std::pow(double(k) - centroid, 4) * p;
  }
  if (which == 2) return v2;
  if (which == 3) return v3 / std::pow(v2, 1.5);
  return v4 / (v2 * v2);
}

inline bool cheb_match(const std::vector<double>& x, std::size_t i, std::size_t j,
                       std::size_t m, double r) {
  for (std::size_t u = 0; u < m; ++u)
    if (std::fabs(x[i + u] - x[j + u]) > r) return false;
  return true;
}

inline double sample_entropy(const std::vector<double>& x, std::size_t m, double r_factor) {
  const std::size_t n = x.size();
  if (n < m + 2) return nan();
  const double r = r_factor * std::sqrt(central_moment(x, 2));
  std::size_t b = 0, a = 0;
  for (std::size_t i = 0; i + m < n; ++i) {
    for (std::size_t j = i + 1; j + m < n; ++j) {
      if (cheb_match(x, i, j, m, r)) {
        ++b;
        if (cheb_match(x, i, j, m + 1, r)) ++a;
      }
    }
  }
  if (a == 0 || b == 0) return nan();
  return -std::log(double(a) / double(b));
}

inline double approximate_entropy(const std::vector<double>& x, std::size_t m,
                                  double r_factor) {
  const std::size_t n = x.size();
  if (n < m + 2) return nan();
  const double r = r_factor * std::sqrt(central_moment(x, 2));
  const auto phi = [&](std::size_t mm) {
    const std::size_t count = n - mm + 1;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t hits = 0;
      for (std::size_t j = 0; j < count; ++j)
        if (cheb_match(x, i, j, mm, r)) ++hits;
      total += std::log(double(hits) / double(count));
    }
    return total / double(count);
  };
  return phi(m) - phi(m + 1);
}

inline double permutation_entropy(const std::vector<double>& x, std::size_t order,
                                  std::size_t delay) {
  const std::size_t span = (order - 1) * delay;
  if (x.size() <= span) return nan();
  // enumerate all order! permutations once, then match each tuple's stable
  // argsort against that list
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> base(order);
  for (std::size_t i = 0; i < order; ++i) base[i] = i;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  std::vector<std::size_t> counts(perms.size(), 0);
  const std::size_t total = x.size() - span;
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<std::size_t> idx(order);
    for (std::size_t i = 0; i < order; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return x[t + a * delay] < x[t + b * delay];
    });
    for (std::size_t p = 0; p < perms.size(); ++p) {
      if (perms[p] == idx) {
        ++counts[p];
        break;
      }
    }
  }
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = double(c) / double(total);
    h -= p * std::log(p);
  }
  return h;
}

/// Reference value for any catalog descriptor, dispatched by name.
inline double feature(const tsad::FeatureDescriptor& d, const std::vector<double>& x) {
  const std::size_t n = x.size();
  const std::string& f = d.name;

  if (f == "mean") return mean(x);
  if (f == "median") return quantile(x, 0.5);
  if (f == "minimum") return *std::min_element(x.begin(), x.end());
  if (f == "maximum") return *std::max_element(x.begin(), x.end());
  if (f == "sum") {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  if (f == "variance") return central_moment(x, 2);
  if (f == "standard_deviation") return std::sqrt(central_moment(x, 2));
  if (f == "root_mean_square") {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s / double(n));
  }
  if (f == "abs_energy") {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  }
  if (f == "skewness") return central_moment(x, 3) / std::pow(central_moment(x, 2), 1.5);
  if (f == "kurtosis")
    return central_moment(x, 4) / std::pow(central_moment(x, 2), 2) - 3.0;
  if (f == "quantile") return quantile(x, d.param("q", 0.5));
  if (f == "interquartile_range") return quantile(x, 0.75) - quantile(x, 0.25);
  if (f == "mean_abs_change") {
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) s += std::fabs(x[i] - x[i - 1]);
    return s / double(n - 1);
  }
  if (f == "mean_change") return (x[n - 1] - x[0]) / double(n - 1);
  if (f == "absolute_sum_of_changes") {
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) s += std::fabs(x[i] - x[i - 1]);
    return s;
  }
  if (f == "cid_ce") {
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) s += (x[i] - x[i - 1]) * (x[i] - x[i - 1]);
    return std::sqrt(s);
  }
  if (f == "count_above_mean") {
    const double mu = mean(x);
    double c = 0;
    for (double v : x) c += v > mu ? 1 : 0;
    return c;
  }
  if (f == "count_below_mean") {
    const double mu = mean(x);
    double c = 0;
    for (double v : x) c += v < mu ? 1 : 0;
    return c;
  }
  if (f == "longest_strike_above_mean" || f == "longest_strike_below_mean") {
    const double mu = mean(x);
    const bool above = f == "longest_strike_above_mean";
    std::size_t best = 0, run = 0;
    for (double v : x) {
      const bool in = above ? v > mu : v < mu;
      run = in ? run + 1 : 0;
      best = std::max(best, run);
    }
    return double(best);
  }
  if (f == "number_mean_crossings") {
    const double mu = mean(x);
    std::vector<int> signs;
    for (double v : x) {
      if (v > mu) signs.push_back(1);
      else if (v < mu) signs.push_back(-1);
      // exact hits keep the previous sign, i.e. contribute nothing
    }
    std::size_t c = 0;
    for (std::size_t i = 1; i < signs.size(); ++i) c += signs[i] != signs[i - 1];
    return double(c);
  }
  if (f == "first_location_of_maximum") {
    const double mx = *std::max_element(x.begin(), x.end());
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] == mx) return double(i) / double(n);
  }
  if (f == "last_location_of_maximum") {
    const double mx = *std::max_element(x.begin(), x.end());
    for (std::size_t i = n; i-- > 0;)
      if (x[i] == mx) return double(i) / double(n);
  }
  if (f == "first_location_of_minimum") {
    const double mn = *std::min_element(x.begin(), x.end());
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] == mn) return double(i) / double(n);
  }
  if (f == "last_location_of_minimum") {
    const double mn = *std::min_element(x.begin(), x.end());
    for (std::size_t i = n; i-- > 0;)
      if (x[i] == mn) return double(i) / double(n);
  }
  if (f == "has_duplicate_max") {
    const double mx = *std::max_element(x.begin(), x.end());
    return std::count(x.begin(), x.end(), mx) > 1 ? 1.0 : 0.0;
  }
  if (f == "has_duplicate_min") {
    const double mn = *std::min_element(x.begin(), x.end());
    return std::count(x.begin(), x.end(), mn) > 1 ? 1.0 : 0.0;
  }
  if (f == "unique_value_ratio") {
    const std::set<double> uniq(x.begin(), x.end());
    return double(uniq.size()) / double(n);
  }
  if (f == "autocorrelation") return autocorrelation(x, std::size_t(d.param("lag", 1)));
  if (f == "partial_autocorrelation") return pacf(x, std::size_t(d.param("lag", 1)));
  if (f == "c3") {
    const auto lag = std::size_t(d.param("lag", 1));
    if (n <= 2 * lag) return nan();
    double s = 0.0;
    for (std::size_t t = 0; t + 2 * lag < n; ++t) s += x[t] * x[t + lag] * x[t + 2 * lag];
    return s / double(n - 2 * lag);
  }
  if (f == "time_reversal_asymmetry") {
    const auto lag = std::size_t(d.param("lag", 1));
    if (n <= 2 * lag) return nan();
    double s = 0.0;
    for (std::size_t t = 0; t + 2 * lag < n; ++t)
      s += x[t + 2 * lag] * x[t + 2 * lag] * x[t + lag] - x[t + lag] * x[t] * x[t];
    return s / double(n - 2 * lag);
  }
  if (f == "fft_real") return dft_coeff(x, std::size_t(d.param("k", 0))).real();
  if (f == "fft_imag") return dft_coeff(x, std::size_t(d.param("k", 0))).imag();
  if (f == "fft_abs") return std::abs(dft_coeff(x, std::size_t(d.param("k", 0))));
  if (f == "fft_angle") {
    const auto c = dft_coeff(x, std::size_t(d.param("k", 0)));
    return std::atan2(c.imag(), c.real());
  }
  if (f == "spectral_centroid") return spectral_moment(x, 1);
  if (f == "spectral_variance") return spectral_moment(x, 2);
  if (f == "spectral_skewness") return spectral_moment(x, 3);
  if (f == "spectral_kurtosis") return spectral_moment(x, 4);
  if (f == "binned_entropy") {
    const auto bins = std::size_t(d.param("bins", 10));
    const double mn = *std::min_element(x.begin(), x.end());
    const double mx = *std::max_element(x.begin(), x.end());
    if (mx == mn) return 0.0;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : x) {
      auto b = std::size_t((v - mn) / (mx - mn) * double(bins));
      if (b >= bins) b = bins - 1;
      counts[b]++;
    }
    double h = 0.0;
    for (auto c : counts) {
      if (c == 0) continue;
      const double p = double(c) / double(n);
      h -= p * std::log(p);
    }
    return h;
  }
  if (f == "ratio_beyond_r_sigma") {
    const double mu = mean(x);
    const double sd = std::sqrt(central_moment(x, 2));
    const double r = d.param("r", 1.0);
    double c = 0;
    for (double v : x) c += std::fabs(v - mu) > r * sd ? 1 : 0;
    return c / double(n);
  }
  if (f == "number_peaks") {
    const auto support = std::size_t(d.param("n", 1));
    double peaks = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i < support || i + support >= n) continue;
      bool ok = true;
      for (std::size_t j = 1; j <= support; ++j)
        if (x[i] <= x[i - j] || x[i] <= x[i + j]) ok = false;
      peaks += ok ? 1 : 0;
    }
    return peaks;
  }
  if (f.rfind("linear_trend", 0) == 0) {
    const double tbar = double(n - 1) / 2.0;
    const double xbar = mean(x);
    double stt = 0.0, stx = 0.0, sxx = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      stt += (double(t) - tbar) * (double(t) - tbar);
      stx += (double(t) - tbar) * (x[t] - xbar);
      sxx += (x[t] - xbar) * (x[t] - xbar);
    }
    const double slope = stx / stt;
    const double intercept = xbar - slope * tbar;
    if (f == "linear_trend_slope") return slope;
    if (f == "linear_trend_intercept") return intercept;
    if (f == "linear_trend_rvalue") return stx / std::sqrt(stt * sxx);
    double rss = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double e = x[t] - intercept - slope * double(t);
      rss += e * e;
    }
    return std::sqrt(rss / double(n - 2) / stt);
  }
  if (f == "sample_entropy")
    return sample_entropy(x, std::size_t(d.param("m", 2)), d.param("r", 0.2));
  if (f == "approximate_entropy")
    return approximate_entropy(x, std::size_t(d.param("m", 2)), d.param("r", 0.2));
  if (f == "permutation_entropy")
    return permutation_entropy(x, std::size_t(d.param("order", 3)),
                               std::size_t(d.param("delay", 1)));
  return nan();
}

/// NaN-aware closeness: both-NaN passes, relative 1e-9 with a 1e-12 absolute
/// floor elsewhere.
inline bool close(double a, double b, double rel = 1e-9, double abs_floor = 1e-12) {
  if (std::isnan(a) && std::isnan(b)) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  return std::fabs(a - b) <= std::max(abs_floor, rel * std::max(std::fabs(a), std::fabs(b)));
}

/// Angles live on the circle: pi and -pi are the same phase (the Nyquist bin
/// lands there with an imaginary part of +/-0 depending on rounding).
inline bool close_angle(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  const double d = std::fabs(a - b);
  return std::min(d, std::fabs(d - 2.0 * M_PI)) <= 1e-9;
}

/// Tolerance policy for one catalog column. The phase of a (numerically)
/// zero Fourier coefficient carries no information, so those angles are not
/// compared at all; nonzero coefficients compare on the circle.
inline bool feature_close(const tsad::FeatureDescriptor& d, const std::vector<double>& x,
                          double got, double want) {
  if (d.name == "fft_angle") {
    const auto c = dft_coeff(x, std::size_t(d.param("k", 0)));
    double scale = 1.0;
    for (double v : x) scale += std::fabs(v);
    if (std::abs(c) <= 1e-9 * scale) return true;
    return close_angle(got, want);
  }
  return close(got, want);
}

/// Textbook LOF, written from the definition. Distances, neighborhoods and
/// per-point sums all run in ascending row order, so on identical input the
/// result is bit-for-bit comparable with any implementation that does the
/// same (which ours documents).
inline std::vector<double> lof(const tsad::Matrix& X, int k) {
  const std::size_t n = X.rows();
  const auto dist = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < X.cols(); ++c) {
      const double diff = X(i, c) - X(j, c);
      s += diff * diff;
    }
    return std::sqrt(s);
  };

  std::vector<double> kdist(n);
  std::vector<std::vector<std::size_t>> nbrs(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(dist(i, j));
    std::sort(others.begin(), others.end());
    kdist[i] = others[std::size_t(k - 1)];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && dist(i, j) <= kdist[i]) nbrs[i].push_back(j);
  }

  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t o : nbrs[i]) total += std::max(kdist[o], dist(i, o));
    lrd[i] = 1.0 / std::max(total / double(nbrs[i].size()), 1e-10);
  }

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t o : nbrs[i]) s += lrd[o] / lrd[i];
    out[i] = s / double(nbrs[i].size());
  }
  return out;
}

/// AUC by counting concordant pairs: each (positive, negative) pair scores
/// 1 if the positive ranks higher, 0.5 on a tie.
inline double auc_pairs(const std::vector<double>& scores,
                        const std::vector<uint8_t>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / double(pairs);
}

/// Exact two-sided signed-rank p-value by enumerating all 2^n sign
/// assignments (vs the library's dynamic program). Ranks arrive in doubled
/// integer units like the library uses internally.
inline double wilcoxon_enum_p(const std::vector<double>& ranks, double w_min) {
  const std::size_t n = ranks.size();
  std::vector<long long> doubled(n);
  long long total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    doubled[i] = std::llround(2.0 * ranks[i]);
    total2 += doubled[i];
  }
  const long long w2 = std::llround(2.0 * w_min);
  long long hits = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    long long wp = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) wp += doubled[i];
    if (wp <= w2 || wp >= total2 - w2) ++hits;
  }
  return std::min(1.0, double(hits) / std::ldexp(1.0, int(n)));
}

}  // namespace oracle
