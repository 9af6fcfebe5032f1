#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tsad/detectors/score.hpp"
#include "tsad/error.hpp"
#include "tsad/matrix.hpp"

namespace tsad {

/// Local Outlier Factor with exact brute-force k-NN (Euclidean). The
/// k-neighborhood includes every point tied at the k-distance. Local
/// reachability density is floored at 1e-10 so duplicate clusters produce
/// finite, equal scores. Returned scores keep the LOF orientation:
/// ~1 inlier, >> 1 outlier.
inline ScoreVector lof_score(const Matrix& X, int k = 20) {
  const std::size_t n = X.rows();
  if (k < 1) raise(Errc::config_error, "k must be >= 1");
  if (n <= static_cast<std::size_t>(k))
    raise(Errc::too_few_rows,
          std::to_string(n) + " rows, need > k=" + std::to_string(k));
  if (!X.all_finite()) raise(Errc::non_finite_input, "lof input");

  constexpr double kLrdFloor = 1e-10;
  const std::size_t d = X.cols();

  const auto dist = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    const auto a = X.row(i), b = X.row(j);
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = a[c] - b[c];
      s += diff * diff;
    }
    return std::sqrt(s);
  };

  std::vector<double> k_distance(n);
  std::vector<std::vector<std::size_t>> neighborhood(n);
  std::vector<std::vector<double>> neighbor_dist(n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[j] = dist(i, j);
    std::vector<double> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(row[j]);
    }
    std::nth_element(others.begin(), others.begin() + (k - 1), others.end());
    k_distance[i] = others[static_cast<std::size_t>(k - 1)];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && row[j] <= k_distance[i]) {
        neighborhood[i].push_back(j);
        neighbor_dist[i].push_back(row[j]);
      }
    }
  }

  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t idx = 0; idx < neighborhood[i].size(); ++idx) {
      const std::size_t o = neighborhood[i][idx];
      total += std::max(k_distance[o], neighbor_dist[i][idx]);  // reach-dist_k(i, o)
    }
    const double mean_reach = total / static_cast<double>(neighborhood[i].size());
    lrd[i] = 1.0 / std::max(mean_reach, kLrdFloor);
  }

  ScoreVector sv;
  sv.detector_id = "LOF";
  sv.params_digest = "k=" + std::to_string(k);
  sv.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t o : neighborhood[i]) s += lrd[o] / lrd[i];
    sv.scores[i] = s / static_cast<double>(neighborhood[i].size());
  }
  return sv;
}

}  // namespace tsad
