#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsad/csv.hpp"

namespace tsad {

/// Per-row anomaly scores. Orientation contract: larger = more anomalous.
struct ScoreVector {
  std::vector<double> scores;
  std::string detector_id;
  std::string params_digest;  // readable parameter echo for provenance
  std::uint64_t seed = 0;
};

/// Score CSV export: (window_start_index, score).
inline void save_scores_csv(const ScoreVector& sv, const std::vector<std::size_t>& starts,
                            const std::string& path) {
  auto out = open_out(path);
  out << "window_start,score\n";
  for (std::size_t i = 0; i < sv.scores.size(); ++i)
    out << starts[i] << ',' << format_double(sv.scores[i]) << '\n';
}

}  // namespace tsad
