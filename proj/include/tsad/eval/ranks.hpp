#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/eval/auc.hpp"
#include "tsad/matrix.hpp"

namespace tsad {

/// Ranks one block of method scores where HIGHER is better (rank 1 = best).
/// Ties get midranks, so a block of M methods always sums to M(M+1)/2.
inline std::vector<double> rank_methods(std::span<const double> aucs) {
  std::vector<double> negated(aucs.size());
  for (std::size_t i = 0; i < aucs.size(); ++i) negated[i] = -aucs[i];
  return detail::midranks(negated);
}

/// Mean ranks over an S x M score table (rows = series, columns = methods).
/// Each row is ranked independently; the output is the column means.
inline std::vector<double> rank_methods(const Matrix& table) {
  if (table.rows() < 1 || table.cols() < 2)
    raise(Errc::degenerate_input, "rank table needs >= 1 row and >= 2 columns");
  for (std::size_t i = 0; i < table.rows(); ++i)
    for (double v : table.row(i))
      if (!std::isfinite(v))
        raise(Errc::undefined_entry, "rank table contains an undefined score");
  std::vector<double> means(table.cols(), 0.0);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto ranks = rank_methods(table.row(i));
    for (std::size_t j = 0; j < table.cols(); ++j) means[j] += ranks[j];
  }
  for (auto& v : means) v /= static_cast<double>(table.rows());
  return means;
}

}  // namespace tsad
