#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "tsad/csv.hpp"
#include "tsad/error.hpp"
#include "tsad/time_series.hpp"

namespace tsad {

/// Loads a labeled or unlabeled series from a CSV file with a header row.
/// Row order is temporal order. Values must be finite; labels must be 0/1.
/// Error rows are reported as 1-based data-row indices (header excluded).
inline TimeSeries load_csv(const std::string& path, const std::string& value_column = "value",
                           const std::optional<std::string>& label_column = std::nullopt) {
  const CsvTable t = read_csv(path);
  const auto vcol = t.column(value_column);
  if (!vcol) raise(Errc::missing_column, "column '" + value_column + "' not in " + path);
  std::optional<std::size_t> lcol;
  if (label_column) {
    lcol = t.column(*label_column);
    if (!lcol) raise(Errc::missing_column, "column '" + *label_column + "' not in " + path);
  }

  TimeSeries ts;
  ts.source = path;
  ts.id = std::filesystem::path(path).stem().string();
  ts.values.reserve(t.rows.size());
  if (lcol) ts.labels.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    const std::size_t rownum = i + 1;
    if (*vcol >= row.size()) raise(Errc::missing_column, "short row " + std::to_string(rownum));
    const auto v = parse_double(row[*vcol]);
    if (!v || !std::isfinite(*v))
      raise(Errc::non_finite_value, "row " + std::to_string(rownum) + " in " + path);
    ts.values.push_back(*v);
    if (lcol) {
      if (*lcol >= row.size()) raise(Errc::bad_label, "short row " + std::to_string(rownum));
      const auto l = parse_double(row[*lcol]);
      if (!l || (*l != 0.0 && *l != 1.0))
        raise(Errc::bad_label, "row " + std::to_string(rownum) + " in " + path);
      ts.labels.push_back(static_cast<std::uint8_t>(*l));
    }
  }
  if (ts.values.empty()) raise(Errc::empty_series, path);
  return ts;
}

/// Writes a series back as CSV ("value" or "value,label"). Values use the
/// shortest round-trip form, so load_csv(save_csv(ts)) reproduces ts exactly.
inline void save_csv(const TimeSeries& ts, const std::string& path) {
  auto out = open_out(path);
  if (ts.has_labels()) {
    out << "value,label\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
      out << format_double(ts.values[i]) << ',' << int(ts.labels[i]) << '\n';
  } else {
    out << "value\n";
    for (double v : ts.values) out << format_double(v) << '\n';
  }
}

/// Loads one series in the anomaly-archive layout: plain text, one value per
/// line, with the filename carrying three trailing underscore-separated
/// integers <train_end>_<anomaly_begin>_<anomaly_end> (1-based, inclusive).
/// Labels are synthesized from the anomaly interval.
inline TimeSeries load_ucr(const std::string& path) {
  const std::string stem = std::filesystem::path(path).stem().string();
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char c : stem) {
      if (c == '_') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
  }
  if (parts.size() < 4) raise(Errc::bad_filename_convention, path);
  long long nums[3];
  for (int i = 0; i < 3; ++i) {
    const auto v = parse_int(parts[parts.size() - 3 + i]);
    if (!v || *v < 0) raise(Errc::bad_filename_convention, path);
    nums[i] = *v;
  }
  const long long train_end = nums[0], abegin = nums[1], aend = nums[2];

  TimeSeries ts;
  ts.source = path;
  ts.id = stem;
  ts.train_end = static_cast<std::size_t>(train_end);
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path);
  std::string line;
  std::size_t rownum = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++rownum;
    const auto v = parse_double(line);
    if (!v || !std::isfinite(*v))
      raise(Errc::non_finite_value, "line " + std::to_string(rownum) + " in " + path);
    ts.values.push_back(*v);
  }
  if (ts.values.empty()) raise(Errc::empty_series, path);

  const long long m = static_cast<long long>(ts.size());
  if (abegin < 1 || aend < abegin || aend > m)
    raise(Errc::indices_out_of_range,
          path + " (interval " + std::to_string(abegin) + ".." + std::to_string(aend) +
              ", length " + std::to_string(m) + ")");
  ts.labels.assign(ts.size(), 0);
  for (long long i = abegin; i <= aend; ++i) ts.labels[static_cast<std::size_t>(i - 1)] = 1;
  return ts;
}

/// Fraction of ground-truth-anomalous points.
inline double contamination_rate(const TimeSeries& ts) {
  if (!ts.has_labels()) raise(Errc::missing_labels, ts.id);
  std::size_t ones = 0;
  for (auto l : ts.labels) ones += l;
  return static_cast<double>(ones) / static_cast<double>(ts.size());
}

/// Product-moment correlation of two series truncated to their common prefix
/// length. The paper does not define cross-length correlation; prefix
/// truncation is the documented choice here.
inline double pearson_correlation(const TimeSeries& a, const TimeSeries& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 2) raise(Errc::too_short, "common length " + std::to_string(n));
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a.values[i];
    mb += b.values[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a.values[i] - ma;
    const double db = b.values[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    raise(Errc::degenerate_series, saa == 0.0 ? a.id : b.id);
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Benchmark curation: drop over-contaminated series, then greedily keep a
/// series only while it stays uncorrelated (|r| < threshold) with everything
/// already kept. Deterministic in input order. A pair whose correlation is
/// undefined (constant or too-short overlap) is treated as uncorrelated.
/// When `dropped` is given, it receives (series id, reason) per removal.
inline std::vector<TimeSeries> curate(
    const std::vector<TimeSeries>& collection, double max_contamination, double corr_threshold,
    std::vector<std::pair<std::string, std::string>>* dropped = nullptr) {
  std::vector<TimeSeries> kept;
  for (const auto& ts : collection) {
    if (contamination_rate(ts) > max_contamination) {
      if (dropped) dropped->emplace_back(ts.id, "CurationContamination");
      continue;
    }
    bool uncorrelated = true;
    for (const auto& k : kept) {
      double r = 0.0;
      try {
        r = pearson_correlation(k, ts);
      } catch (const Error&) {
        continue;
      }
      if (std::abs(r) >= corr_threshold) {
        uncorrelated = false;
        break;
      }
    }
    if (uncorrelated) {
      kept.push_back(ts);
    } else if (dropped) {
      dropped->emplace_back(ts.id, "CurationCorrelation");
    }
  }
  return kept;
}

}  // namespace tsad
