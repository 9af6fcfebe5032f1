#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "tsad/error.hpp"

namespace tsad {

namespace detail {

/// Midranks (1-based) of a value sequence; tied values share the average of
/// the integer ranks they span.
inline std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

/// Window-level AUC in the Mann-Whitney formulation: the fraction of
/// (positive, negative) pairs where the positive outscores the negative,
/// ties counted half. Computed via rank sums with midranks.
inline double auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size())
    raise(Errc::dimension_mismatch, "scores and labels differ in length");
  std::size_t pos = 0;
  for (auto l : labels) pos += l;
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) raise(Errc::single_class, "AUC needs both classes");

  const auto ranks = detail::midranks(scores);
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) pos_rank_sum += ranks[i];
  }
  const double p = static_cast<double>(pos);
  const double u = pos_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

}  // namespace tsad
