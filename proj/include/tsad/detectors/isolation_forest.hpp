#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tsad/detectors/score.hpp"
#include "tsad/error.hpp"
#include "tsad/matrix.hpp"
#include "tsad/rng.hpp"

namespace tsad {

/// One ensemble member: a flat array of nodes. feature < 0 marks an external
/// node; size is the number of subsample rows that reached it.
struct IsolationTree {
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int size = 0;
  };
  std::vector<Node> nodes;
};

struct IsolationForestModel {
  std::vector<IsolationTree> trees;
  int subsample_size = 0;  // psi
  int tree_count = 0;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
};

/// Expected unsuccessful-search path length in a BST of n nodes. Normalizes
/// isolation depth; the n <= 2 special cases follow reference practice.
inline double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  constexpr double gamma = 0.5772156649;
  const double nn = static_cast<double>(n);
  return 2.0 * (std::log(nn - 1.0) + gamma) - 2.0 * (nn - 1.0) / nn;
}

namespace detail {

struct TreeBuilder {
  const Matrix& X;
  Rng& rng;
  int depth_limit;
  IsolationTree tree;

  /// Usable split features have at least one representable value strictly
  /// between their node min and max.
  int grow(std::vector<std::size_t>& rows, int depth) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    if (depth >= depth_limit || rows.size() <= 1) {
      tree.nodes[node_id].size = static_cast<int>(rows.size());
      return node_id;
    }
    // pick uniformly among features that still admit a split in this node
    std::vector<std::size_t> candidates(X.cols());
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    int feature = -1;
    double lo = 0.0, hi = 0.0;
    while (!candidates.empty()) {
      const std::size_t pick = rng.below(candidates.size());
      const std::size_t f = candidates[pick];
      lo = X(rows[0], f);
      hi = lo;
      for (std::size_t r : rows) {
        lo = std::min(lo, X(r, f));
        hi = std::max(hi, X(r, f));
      }
      if (std::nextafter(lo, hi) < hi) {
        feature = static_cast<int>(f);
        break;
      }
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    if (feature < 0) {  // every feature constant: cannot isolate further
      tree.nodes[node_id].size = static_cast<int>(rows.size());
      return node_id;
    }
    double threshold;
    do {
      threshold = lo + rng.next_double() * (hi - lo);
    } while (!(threshold > lo && threshold < hi));

    std::vector<std::size_t> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (std::size_t r : rows) {
      (X(r, static_cast<std::size_t>(feature)) < threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    tree.nodes[node_id].feature = feature;
    tree.nodes[node_id].threshold = threshold;
    const int left = grow(left_rows, depth + 1);
    tree.nodes[node_id].left = left;
    const int right = grow(right_rows, depth + 1);
    tree.nodes[node_id].right = right;
    return node_id;
  }
};

inline double tree_path_length(const IsolationTree& tree, std::span<const double> x) {
  int node = 0;
  double edges = 0.0;
  while (tree.nodes[node].feature >= 0) {
    const auto& nd = tree.nodes[node];
    node = x[static_cast<std::size_t>(nd.feature)] < nd.threshold ? nd.left : nd.right;
    edges += 1.0;
  }
  return edges + average_path_length(static_cast<std::size_t>(tree.nodes[node].size));
}

}  // namespace detail

/// Fits an isolation forest: tree_count trees, each grown on a
/// without-replacement subsample of min(subsample, F) rows. Every tree owns an
/// independent seeded substream derived from (seed, tree index), so fitted
/// models are identical under any parallel schedule.
inline IsolationForestModel if_fit(const Matrix& X, int tree_count, int subsample,
                                   std::uint64_t seed) {
  if (X.rows() < 2) raise(Errc::degenerate_input, "need at least 2 rows");
  if (X.cols() < 1) raise(Errc::degenerate_input, "need at least 1 column");
  if (!X.all_finite()) raise(Errc::non_finite_input, "isolation forest input");
  if (tree_count < 1 || subsample < 2) raise(Errc::config_error, "bad forest parameters");

  IsolationForestModel model;
  model.tree_count = tree_count;
  model.subsample_size = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(subsample), X.rows()));
  model.seed = seed;
  model.dim = X.cols();
  const auto psi = static_cast<std::size_t>(model.subsample_size);
  const int depth_limit =
      static_cast<int>(std::ceil(std::log2(static_cast<double>(psi))));

  model.trees.reserve(static_cast<std::size_t>(tree_count));
  for (int t = 0; t < tree_count; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    // partial Fisher-Yates draw of psi distinct rows
    std::vector<std::size_t> pool(X.rows());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<std::size_t> sample(psi);
    for (std::size_t i = 0; i < psi; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      sample[i] = pool[i];
    }
    detail::TreeBuilder builder{X, rng, depth_limit, {}};
    builder.grow(sample, 0);
    model.trees.push_back(std::move(builder.tree));
  }
  return model;
}

inline IsolationForestModel if_fit(const Matrix& X, std::uint64_t seed) {
  return if_fit(X, 100, 256, seed);
}

/// s(x) = 2^(-E[h(x)] / c(psi)); h(x) = edges traversed plus the c(size)
/// adjustment at the reached external node. Scores lie strictly in (0, 1).
inline ScoreVector if_score(const IsolationForestModel& model, const Matrix& X) {
  if (X.cols() != model.dim)
    raise(Errc::dimension_mismatch, std::to_string(X.cols()) + " columns, model expects " +
                                        std::to_string(model.dim));
  ScoreVector sv;
  sv.detector_id = "IF";
  sv.seed = model.seed;
  sv.params_digest = "T=" + std::to_string(model.tree_count) +
                     ",psi=" + std::to_string(model.subsample_size) +
                     ",seed=" + std::to_string(model.seed);
  const double norm = average_path_length(static_cast<std::size_t>(model.subsample_size));
  sv.scores.resize(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) {
    double total = 0.0;
    for (const auto& tree : model.trees) total += detail::tree_path_length(tree, X.row(i));
    const double mean_path = total / static_cast<double>(model.trees.size());
    sv.scores[i] = std::pow(2.0, -mean_path / norm);
  }
  return sv;
}

}  // namespace tsad
