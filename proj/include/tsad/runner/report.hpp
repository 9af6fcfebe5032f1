#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/eval/cd_diagram.hpp"
#include "tsad/eval/friedman.hpp"
#include "tsad/eval/ranks.hpp"
#include "tsad/eval/wilcoxon.hpp"
#include "tsad/runner/records.hpp"

namespace tsad {

namespace detail {

inline std::string sanitize_filename(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

inline std::string sci3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

/// TS-vs-FE AUC pairs for one (dataset, window, detector) cell. A pair is one
/// (series, normalization) combination holding both representations.
struct PairedAucs {
  std::vector<double> ts;
  std::vector<double> fe;
};

inline PairedAucs collect_pairs(const std::vector<const ResultRecord*>& cell) {
  std::map<std::pair<std::string, std::string>,
           std::pair<std::optional<double>, std::optional<double>>>
      by_key;
  for (const auto* r : cell) {
    auto& slot = by_key[{r->series_id, r->normalization}];
    (r->representation == Repr::ts ? slot.first : slot.second) = r->auc;
  }
  PairedAucs out;
  for (const auto& [key, slot] : by_key) {
    if (slot.first && slot.second) {
      out.ts.push_back(*slot.first);
      out.fe.push_back(*slot.second);
    }
  }
  return out;
}

}  // namespace detail

/// Emits the report directory:
///   rank_table_<dataset>.csv     one row per window size, {TS rank, FE rank,
///                                p-value, bold flag} per detector
///   p_value_table_<dataset>.csv  the same tests in long form
///   cd_<dataset>.svg/.txt        critical-difference diagram over the
///                                TS/FE x IF/LOF method labels, AUC averaged
///                                over window sizes per series
///   normalization_table.csv      mean rank of each row-normalization method
///                                (only when several were run)
/// Mean ranks always count 1 as best. Undefined p-values print as NA.
inline void generate_report(const std::vector<ResultRecord>& records,
                            const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;

  std::set<std::string> method_labels;
  std::set<std::pair<std::string, std::string>> series_keys;
  for (const auto& r : records) {
    method_labels.insert(std::string(repr_name(r.representation)) + "-" +
                         detector_name(r.detector));
    series_keys.insert({r.dataset, r.series_id});
  }
  if (method_labels.size() < 2)
    raise(Errc::insufficient_data, "report needs at least 2 method labels");
  if (series_keys.size() < 2) raise(Errc::insufficient_data, "report needs at least 2 series");

  fs::create_directories(out_dir);

  std::vector<std::string> datasets;  // first-appearance order
  for (const auto& r : records) {
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
      datasets.push_back(r.dataset);
  }

  for (const auto& ds : datasets) {
    std::vector<const ResultRecord*> rs;
    for (const auto& r : records)
      if (r.dataset == ds) rs.push_back(&r);

    std::set<std::size_t> window_set;
    bool has_if = false, has_lof = false;
    for (const auto* r : rs) {
      window_set.insert(r->window_size);
      (r->detector == Detector::iforest ? has_if : has_lof) = true;
    }
    std::vector<Detector> dets;
    if (has_if) dets.push_back(Detector::iforest);
    if (has_lof) dets.push_back(Detector::lof);

    // --- Table III mirror: per-W mean ranks + Wilcoxon p per detector ----
    const std::string stem = detail::sanitize_filename(ds);
    auto rank_csv = open_out((out_dir / ("rank_table_" + stem + ".csv")).string());
    auto p_csv = open_out((out_dir / ("p_value_table_" + stem + ".csv")).string());
    rank_csv << "window_size";
    for (auto det : dets) {
      const std::string d = detector_name(det);
      rank_csv << ",ts_" << d << "_rank,fe_" << d << "_rank," << d << "_p_value," << d
               << "_bold";
    }
    rank_csv << '\n';
    p_csv << "window_size,detector,n_pairs,p_value,bold\n";

    for (auto w : window_set) {
      rank_csv << w;
      for (auto det : dets) {
        std::vector<const ResultRecord*> cell;
        for (const auto* r : rs)
          if (r->window_size == w && r->detector == det) cell.push_back(r);
        const auto pairs = detail::collect_pairs(cell);
        if (pairs.ts.empty()) {
          rank_csv << ",NA,NA,NA,0";
          p_csv << w << ',' << detector_name(det) << ",0,NA,0\n";
          continue;
        }
        double ts_rank = 0.0, fe_rank = 0.0;
        for (std::size_t i = 0; i < pairs.ts.size(); ++i) {
          const double both[2] = {pairs.ts[i], pairs.fe[i]};
          const auto rk = rank_methods(both);
          ts_rank += rk[0];
          fe_rank += rk[1];
        }
        ts_rank /= static_cast<double>(pairs.ts.size());
        fe_rank /= static_cast<double>(pairs.ts.size());

        std::string p_str = "NA";
        bool bold = false;
        try {
          const auto wr = wilcoxon_signed_rank(pairs.ts, pairs.fe);
          p_str = detail::sci3(wr.p_value);
          bold = wr.p_value < 0.05;
        } catch (const Error& e) {
          if (e.code() != Errc::all_zero_differences) throw;
        }
        rank_csv << ',' << detail::fixed3(ts_rank) << ',' << detail::fixed3(fe_rank) << ','
                 << p_str << ',' << (bold ? 1 : 0);
        p_csv << w << ',' << detector_name(det) << ',' << pairs.ts.size() << ',' << p_str
              << ',' << (bold ? 1 : 0) << '\n';
      }
      rank_csv << '\n';
    }
    if (!rank_csv || !p_csv) raise(Errc::io_error, "failed writing tables for " + ds);

    // --- Fig. 2 mirror: CD diagram over method labels, AUC averaged over W
    static const std::pair<Repr, Detector> canonical[4] = {
        {Repr::ts, Detector::iforest},
        {Repr::fe, Detector::iforest},
        {Repr::ts, Detector::lof},
        {Repr::fe, Detector::lof}};
    std::vector<std::pair<Repr, Detector>> methods;
    for (const auto& m : canonical) {
      for (const auto* r : rs) {
        if (r->representation == m.first && r->detector == m.second) {
          methods.push_back(m);
          break;
        }
      }
    }
    // per-series mean AUC per method (averaged over windows/normalizations)
    std::map<std::string, std::vector<std::pair<double, std::size_t>>> per_series;
    for (const auto* r : rs) {
      auto& sums = per_series[r->series_id];
      sums.resize(methods.size(), {0.0, 0});
      for (std::size_t j = 0; j < methods.size(); ++j) {
        if (methods[j].first == r->representation && methods[j].second == r->detector) {
          sums[j].first += r->auc;
          sums[j].second += 1;
        }
      }
    }
    std::vector<std::vector<double>> complete;  // S rows of M mean AUCs
    for (const auto& [id, sums] : per_series) {
      std::vector<double> row;
      bool full = sums.size() == methods.size() && !methods.empty();
      for (const auto& [total, count] : sums) {
        if (count == 0) {
          full = false;
          break;
        }
        row.push_back(total / static_cast<double>(count));
      }
      if (full) complete.push_back(std::move(row));
    }

    if (methods.size() >= 2 && complete.size() >= 2) {
      const std::size_t m = methods.size(), s = complete.size();
      std::vector<double> mean_ranks(m, 0.0), auc_means(m, 0.0), auc_stds(m, 0.0);
      for (const auto& row : complete) {
        const auto rk = rank_methods(row);
        for (std::size_t j = 0; j < m; ++j) {
          mean_ranks[j] += rk[j];
          auc_means[j] += row[j];
        }
      }
      for (std::size_t j = 0; j < m; ++j) {
        mean_ranks[j] /= static_cast<double>(s);
        auc_means[j] /= static_cast<double>(s);
      }
      for (const auto& row : complete) {
        for (std::size_t j = 0; j < m; ++j) {
          const double d = row[j] - auc_means[j];
          auc_stds[j] += d * d;
        }
      }
      for (std::size_t j = 0; j < m; ++j)
        auc_stds[j] = std::sqrt(auc_stds[j] / static_cast<double>(s - 1));  // sample std

      std::vector<std::string> names;
      for (const auto& [repr, det] : methods)
        names.push_back(std::string(repr_name(repr)) + "-" + detector_name(det));
      const double cd = nemenyi_cd(m, s, 0.05);
      render_cd_diagram(mean_ranks, names, auc_means, auc_stds, cd,
                        out_dir / ("cd_" + stem + ".svg"));
    }
  }

  // --- Table II mirror: mean rank per normalization method ---------------
  static const char* canonical_norms[4] = {"none", "minmax", "median-iqr", "mean-std"};
  std::vector<std::string> norms;
  for (const char* n : canonical_norms) {
    for (const auto& r : records) {
      if (r.normalization == n) {
        norms.push_back(n);
        break;
      }
    }
  }
  for (const auto& r : records) {  // tolerate names outside the built-in four
    if (std::find(norms.begin(), norms.end(), r.normalization) == norms.end())
      norms.push_back(r.normalization);
  }
  if (norms.size() < 2) return;

  auto norm_csv = open_out((out_dir / "normalization_table.csv").string());
  norm_csv << "dataset,window_size,representation";
  for (const auto& n : norms) norm_csv << ',' << n;
  norm_csv << '\n';
  for (const auto& ds : datasets) {
    std::set<std::size_t> window_set;
    for (const auto& r : records)
      if (r.dataset == ds) window_set.insert(r.window_size);
    for (auto w : window_set) {
      for (Repr repr : {Repr::ts, Repr::fe}) {
        // one observation per (series, detector) holding every normalization
        std::map<std::pair<std::string, Detector>, std::vector<std::optional<double>>> groups;
        for (const auto& r : records) {
          if (r.dataset != ds || r.window_size != w || r.representation != repr) continue;
          auto& g = groups[{r.series_id, r.detector}];
          g.resize(norms.size());
          for (std::size_t j = 0; j < norms.size(); ++j)
            if (r.normalization == norms[j]) g[j] = r.auc;
        }
        std::vector<double> rank_sums(norms.size(), 0.0);
        std::size_t count = 0;
        for (const auto& [key, g] : groups) {
          if (g.size() != norms.size()) continue;
          std::vector<double> aucs;
          bool full = true;
          for (const auto& v : g) {
            if (!v) {
              full = false;
              break;
            }
            aucs.push_back(*v);
          }
          if (!full) continue;
          const auto rk = rank_methods(aucs);
          for (std::size_t j = 0; j < norms.size(); ++j) rank_sums[j] += rk[j];
          ++count;
        }
        if (count == 0) continue;
        norm_csv << ds << ',' << w << ',' << repr_name(repr);
        for (double v : rank_sums) norm_csv << ',' << detail::fixed3(v / static_cast<double>(count));
        norm_csv << '\n';
      }
    }
  }
  if (!norm_csv) raise(Errc::io_error, "failed writing normalization table");
}

}  // namespace tsad
