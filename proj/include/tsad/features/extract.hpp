#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/features/descriptor.hpp"
#include "tsad/features/kernels.hpp"
#include "tsad/windowing.hpp"

namespace tsad {

/// Computes every catalog feature for every window row. No pruning happens
/// here; non-finite cells flow through to prune().
inline FeatureMatrix extract(const WindowMatrix& wm,
                             const std::vector<FeatureDescriptor>& catalog) {
  if (catalog.empty()) raise(Errc::unknown_feature, "empty catalog");
  FeatureMatrix fm;
  fm.series_id = wm.series_id;
  fm.window_size = wm.window_size;
  fm.columns = catalog;
  fm.window_starts = wm.window_starts;
  fm.rows = Matrix(wm.count(), catalog.size());
  for (std::size_t i = 0; i < wm.count(); ++i) {
    detail::WindowContext ctx(wm.rows.row(i));
    auto out = fm.rows.row(i);
    for (std::size_t j = 0; j < catalog.size(); ++j)
      out[j] = detail::eval_feature(catalog[j], ctx);
  }
  return fm;
}

/// Drops every column containing at least one non-finite value, recording the
/// dropped descriptors. Errors if nothing survives.
inline FeatureMatrix prune(const FeatureMatrix& fm) {
  const std::size_t rows = fm.rows.rows(), cols = fm.rows.cols();
  std::vector<bool> keep(cols, true);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (!std::isfinite(fm.rows(i, j))) {
        keep[j] = false;
        break;
      }
    }
  }
  std::size_t kept = 0;
  for (std::size_t j = 0; j < cols; ++j) kept += keep[j];
  if (kept == 0) raise(Errc::all_columns_dropped, fm.series_id);

  FeatureMatrix out;
  out.series_id = fm.series_id;
  out.window_size = fm.window_size;
  out.window_starts = fm.window_starts;
  out.dropped_columns = fm.dropped_columns;
  out.columns.reserve(kept);
  out.rows = Matrix(rows, kept);
  std::size_t jj = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    if (!keep[j]) {
      out.dropped_columns.push_back(fm.columns[j]);
      continue;
    }
    out.columns.push_back(fm.columns[j]);
    for (std::size_t i = 0; i < rows; ++i) out.rows(i, jj) = fm.rows(i, j);
    ++jj;
  }
  return out;
}

/// Feature-matrix CSV export: descriptor names as headers, first column is
/// the window start index.
inline void save_feature_csv(const FeatureMatrix& fm, const std::string& path) {
  auto out = open_out(path);
  out << "window_start";
  for (const auto& c : fm.columns) out << ',' << c.column_name();
  out << '\n';
  for (std::size_t i = 0; i < fm.rows.rows(); ++i) {
    out << fm.window_starts[i];
    for (std::size_t j = 0; j < fm.rows.cols(); ++j) out << ',' << format_double(fm.rows(i, j));
    out << '\n';
  }
}

}  // namespace tsad
