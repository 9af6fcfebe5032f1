#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/eval/ranks.hpp"
#include "tsad/matrix.hpp"

namespace tsad {

namespace detail {

/// Regularized lower incomplete gamma P(a, x), series expansion.
/// Converges quickly for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a, x), Lentz continued fraction.
/// Converges quickly for x >= a + 1.
inline double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Survival function of the chi-square distribution with df degrees of
/// freedom: P(X > x).
inline double chi2_survival(double x, double df) {
  if (x <= 0.0) return 1.0;
  const double a = df / 2.0;
  const double half = x / 2.0;
  if (half < a + 1.0) return 1.0 - gamma_p_series(a, half);
  return gamma_q_cf(a, half);
}

}  // namespace detail

struct FriedmanResult {
  std::vector<double> mean_ranks;  // one per method (column), 1 = best
  double statistic = 0.0;          // chi-square with M-1 df
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
};

/// Friedman test over an S x M score matrix (rows = series, columns =
/// methods, higher score = better). Ranks each row with midranks, then
///   chi2_F = 12 S / (M (M+1)) * sum_j Rbar_j^2  -  3 S (M+1).
/// Feeding already-ranked rows (1 = best) gives the same chi2 and p: the
/// statistic is invariant under the per-row rank reversal that re-ranking
/// them induces.
inline FriedmanResult friedman_test(const Matrix& scores) {
  const std::size_t s = scores.rows();
  const std::size_t m = scores.cols();
  if (s < 2 || m < 2)
    raise(Errc::degenerate_input, "Friedman test needs at least 2 series and 2 methods");

  FriedmanResult r;
  r.mean_ranks = rank_methods(scores);

  const double sd = static_cast<double>(s);
  const double md = static_cast<double>(m);
  double sum_sq = 0.0;
  for (double v : r.mean_ranks) sum_sq += v * v;
  r.statistic = 12.0 * sd / (md * (md + 1.0)) * sum_sq - 3.0 * sd * (md + 1.0);
  r.degrees_of_freedom = md - 1.0;
  r.p_value = detail::chi2_survival(r.statistic, r.degrees_of_freedom);
  return r;
}

/// Nemenyi critical difference for M methods over S series at the given
/// significance level. Critical values are the studentized range upper
/// quantiles divided by sqrt(2), tabulated for M = 2..10 and
/// alpha in {0.05, 0.10}.
inline double nemenyi_cd(std::size_t methods, std::size_t series, double alpha) {
  static constexpr std::array<double, 9> q05 = {
      1.959964, 2.343701, 2.569032, 2.727774, 2.849705,
      2.948319, 3.030879, 3.101730, 3.163684};
  static constexpr std::array<double, 9> q10 = {
      1.644854, 2.052293, 2.291341, 2.459516, 2.588521,
      2.692732, 2.779884, 2.854606, 2.919888};
  if (methods < 2 || methods > 10)
    raise(Errc::unsupported_m, "Nemenyi table covers 2..10 methods");
  if (series == 0) raise(Errc::insufficient_data, "no series");
  const double* table = nullptr;
  if (alpha == 0.05)
    table = q05.data();
  else if (alpha == 0.10)
    table = q10.data();
  else
    raise(Errc::config_error, "alpha must be 0.05 or 0.10");
  const double q = table[methods - 2];
  const double md = static_cast<double>(methods);
  return q * std::sqrt(md * (md + 1.0) / (6.0 * static_cast<double>(series)));
}

}  // namespace tsad
