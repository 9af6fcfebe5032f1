#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/eval/auc.hpp"

namespace tsad {

/// Which p-value branch to take. `automatic` switches on the number of
/// non-zero differences: exact enumeration up to 20, normal approximation
/// beyond that. The explicit values exist so tests can force either branch.
enum class WilcoxonMethod { automatic, exact, approximate };

struct WilcoxonResult {
  double statistic = 0.0;    // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  std::size_t n_effective = 0;  // pairs left after dropping zero differences
  double p_value = 1.0;         // two-sided
  WilcoxonMethod method_used = WilcoxonMethod::exact;
};

namespace detail {

/// Exact two-sided p-value by dynamic programming over the signed-rank
/// distribution. Works in doubled rank units so midranks (which are
/// half-integers at worst) become exact integers.
inline double wilcoxon_exact_p(const std::vector<double>& ranks, double w_min) {
  const std::size_t n = ranks.size();
  std::vector<long long> doubled(n);
  long long total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    doubled[i] = std::llround(2.0 * ranks[i]);
    total2 += doubled[i];
  }
  // ways[s] = number of sign assignments whose positive-rank sum is s/2
  std::vector<double> ways(static_cast<std::size_t>(total2) + 1, 0.0);
  ways[0] = 1.0;
  long long reach = 0;
  for (std::size_t i = 0; i < n; ++i) {
    reach += doubled[i];
    for (long long s = reach; s >= doubled[i]; --s)
      ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - doubled[i])];
  }
  const long long w2 = std::llround(2.0 * w_min);
  double lower = 0.0, upper = 0.0;
  for (long long s = 0; s <= total2; ++s) {
    if (s <= w2) lower += ways[static_cast<std::size_t>(s)];
    if (s >= total2 - w2) upper += ways[static_cast<std::size_t>(s)];
  }
  const double denom = std::ldexp(1.0, static_cast<int>(n));  // 2^n
  return std::min(1.0, (lower + upper) / denom);
}

/// Normal approximation with tie correction and a 0.5 continuity correction.
inline double wilcoxon_normal_p(const std::vector<double>& ranks, double w_min) {
  const double n = static_cast<double>(ranks.size());
  const double mean = n * (n + 1.0) / 4.0;
  double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  // tie correction: subtract sum(t^3 - t)/48 over tie groups
  std::vector<double> sorted(ranks);
  std::sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    var -= (t * t * t - t) / 48.0;
    i = j + 1;
  }
  if (var <= 0.0) return 1.0;  // all ranks tied away; no evidence either way
  const double z = (w_min - mean + 0.5) / std::sqrt(var);
  const double p = 2.0 * 0.5 * std::erfc(-z / std::sqrt(2.0));
  return std::min(1.0, p);
}

}  // namespace detail

/// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped
/// before ranking; |differences| get midranks.
inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                           std::span<const double> b,
                                           WilcoxonMethod method = WilcoxonMethod::automatic) {
  if (a.size() != b.size())
    raise(Errc::dimension_mismatch, "paired samples differ in length");
  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (!std::isfinite(d)) raise(Errc::non_finite_input, "non-finite difference");
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty())
    raise(Errc::all_zero_differences, "every paired difference is zero");

  std::vector<double> abs_d(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) abs_d[i] = std::fabs(diffs[i]);
  const auto ranks = detail::midranks(abs_d);

  WilcoxonResult r;
  r.n_effective = diffs.size();
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 0.0)
      r.w_plus += ranks[i];
    else
      r.w_minus += ranks[i];
  }
  r.statistic = std::min(r.w_plus, r.w_minus);

  r.method_used = method;
  if (method == WilcoxonMethod::automatic)
    r.method_used = diffs.size() <= 20 ? WilcoxonMethod::exact : WilcoxonMethod::approximate;

  if (r.method_used == WilcoxonMethod::exact)
    r.p_value = detail::wilcoxon_exact_p(ranks, r.statistic);
  else
    r.p_value = detail::wilcoxon_normal_p(ranks, r.statistic);
  return r;
}

}  // namespace tsad
