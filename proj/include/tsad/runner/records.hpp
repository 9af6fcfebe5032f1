#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "tsad/csv.hpp"
#include "tsad/error.hpp"

namespace tsad {

enum class Repr { ts, fe };
enum class Detector { iforest, lof };

inline const char* repr_name(Repr r) noexcept { return r == Repr::ts ? "TS" : "FE"; }
inline const char* detector_name(Detector d) noexcept {
  return d == Detector::iforest ? "IF" : "LOF";
}

inline Repr parse_repr(const std::string& s) {
  if (s == "TS") return Repr::ts;
  if (s == "FE") return Repr::fe;
  raise(Errc::config_error, "unknown representation '" + s + "' (expected TS or FE)");
}

inline Detector parse_detector(const std::string& s) {
  if (s == "IF") return Detector::iforest;
  if (s == "LOF") return Detector::lof;
  raise(Errc::config_error, "unknown detector '" + s + "' (expected IF or LOF)");
}

/// One completed (series, window size, representation, detector) cell.
/// The key fields form a unique identity within a run.
struct ResultRecord {
  std::string dataset;
  std::string series_id;
  std::size_t window_size = 0;
  Repr representation = Repr::ts;
  Detector detector = Detector::iforest;
  std::string normalization;  // row normalization method name
  double auc = 0.0;
  std::size_t n_windows = 0;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;  // reported in timings.csv, not results.csv
};

/// A (series, W, representation, detector) cell that could not produce a
/// result; reason is the stable error name. Fields that don't apply (e.g.
/// window size for a load failure) stay empty/zero.
struct SkipRecord {
  std::string dataset;
  std::string series_id;
  std::size_t window_size = 0;  // 0 = not applicable
  std::string representation;   // may be empty
  std::string detector;         // may be empty
  std::string reason;
};

// results.csv column order is fixed; runtime goes to a separate timings file
// so result bytes stay identical across machines and thread counts.
inline constexpr const char* result_csv_header =
    "dataset,series_id,window_size,representation,detector,normalization,auc,n_windows,seed";

inline void write_result_row(std::ostream& os, const ResultRecord& r) {
  os << r.dataset << ',' << r.series_id << ',' << r.window_size << ','
     << repr_name(r.representation) << ',' << detector_name(r.detector) << ','
     << r.normalization << ',' << format_double(r.auc) << ',' << r.n_windows << ','
     << r.seed << '\n';
}

inline void write_skip_row(std::ostream& os, const SkipRecord& s) {
  os << s.dataset << ',' << s.series_id << ',';
  if (s.window_size > 0) os << s.window_size;
  os << ',' << s.representation << ',' << s.detector << ',' << s.reason << '\n';
}

inline constexpr const char* skip_csv_header =
    "dataset,series_id,window_size,representation,detector,reason";

inline constexpr const char* timing_csv_header =
    "dataset,series_id,window_size,representation,detector,runtime_ms";

inline void write_timing_row(std::ostream& os, const ResultRecord& r) {
  os << r.dataset << ',' << r.series_id << ',' << r.window_size << ','
     << repr_name(r.representation) << ',' << detector_name(r.detector) << ','
     << r.runtime_ms << '\n';
}

/// Reads a results CSV back into records (used by `report --in`).
inline std::vector<ResultRecord> read_results_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path.string());
  const auto num = [&](const std::string& tok) {
    const auto v = parse_double(tok);
    if (!v) raise(Errc::io_error, "bad numeric field '" + tok + "' in " + path.string());
    return *v;
  };
  const auto integer = [&](const std::string& tok) {
    const auto v = parse_uint(tok);
    if (!v) raise(Errc::io_error, "bad integer field '" + tok + "' in " + path.string());
    return *v;
  };
  const auto need = [&](const char* name) {
    const auto idx = table.column(name);
    if (!idx) raise(Errc::missing_column, std::string(name) + " missing from " + path.string());
    return *idx;
  };
  const std::size_t c_dataset = need("dataset");
  const std::size_t c_series = need("series_id");
  const std::size_t c_w = need("window_size");
  const std::size_t c_repr = need("representation");
  const std::size_t c_det = need("detector");
  const std::size_t c_norm = need("normalization");
  const std::size_t c_auc = need("auc");
  const std::size_t c_nw = need("n_windows");
  const std::size_t c_seed = need("seed");

  std::vector<ResultRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    ResultRecord r;
    r.dataset = row[c_dataset];
    r.series_id = row[c_series];
    r.window_size = static_cast<std::size_t>(integer(row[c_w]));
    r.representation = parse_repr(row[c_repr]);
    r.detector = parse_detector(row[c_det]);
    r.normalization = row[c_norm];
    r.auc = num(row[c_auc]);
    r.n_windows = static_cast<std::size_t>(integer(row[c_nw]));
    r.seed = static_cast<std::uint64_t>(integer(row[c_seed]));
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace tsad
