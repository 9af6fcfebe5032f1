#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tsad/detectors/isolation_forest.hpp"
#include "tsad/detectors/lof.hpp"
#include "tsad/error.hpp"
#include "tsad/eval/auc.hpp"
#include "tsad/features/catalog.hpp"
#include "tsad/features/extract.hpp"
#include "tsad/normalize.hpp"
#include "tsad/rng.hpp"
#include "tsad/runner/config.hpp"
#include "tsad/runner/records.hpp"
#include "tsad/series_io.hpp"
#include "tsad/windowing.hpp"

namespace tsad {

struct RunOutput {
  std::vector<ResultRecord> records;  // in task order
  std::vector<SkipRecord> skips;      // load/curation skips first, then task skips
};

namespace detail {

struct LoadedSeries {
  std::string dataset;
  TimeSeries ts;
};

inline std::vector<std::filesystem::path> dataset_files(const DatasetSpec& spec) {
  namespace fs = std::filesystem;
  const fs::path root(spec.path);
  if (fs::is_regular_file(root)) return {root};
  if (!fs::is_directory(root)) raise(Errc::io_error, "no such file or directory: " + spec.path);
  const std::string want_ext = spec.loader == "ucr" ? ".txt" : ".csv";
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == want_ext)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());  // directory order is not deterministic
  return files;
}

/// Loads one configured dataset. File-level failures become skip entries,
/// never exceptions; curation drops are recorded the same way.
inline void load_dataset(const DatasetSpec& spec, std::vector<LoadedSeries>& out,
                         std::vector<SkipRecord>& skips) {
  std::vector<std::filesystem::path> files;
  try {
    files = dataset_files(spec);
  } catch (const Error& e) {
    skips.push_back({spec.name, "", 0, "", "", errc_name(e.code())});
    return;
  }
  std::vector<TimeSeries> loaded;
  for (const auto& file : files) {
    try {
      if (spec.loader == "ucr") {
        loaded.push_back(load_ucr(file.string()));
      } else {
        const std::optional<std::string> label_col =
            spec.label_column.empty() ? std::nullopt
                                      : std::optional<std::string>(spec.label_column);
        loaded.push_back(load_csv(file.string(), spec.value_column, label_col));
      }
    } catch (const Error& e) {
      skips.push_back({spec.name, file.stem().string(), 0, "", "", errc_name(e.code())});
    }
  }
  if (spec.curation) {
    std::vector<std::pair<std::string, std::string>> dropped;
    loaded = curate(loaded, spec.curation->max_contamination, spec.curation->corr_threshold,
                    &dropped);
    for (auto& [id, reason] : dropped) skips.push_back({spec.name, id, 0, "", "", reason});
  }
  for (auto& ts : loaded) {
    if (!ts.has_labels()) {
      skips.push_back({spec.name, ts.id, 0, "", "", errc_name(Errc::missing_labels)});
      continue;
    }
    out.push_back({spec.name, std::move(ts)});
  }
}

struct Task {
  std::size_t series_index;
  std::size_t window;
  Repr repr;
  Detector det;
};

/// Each task draws from a substream keyed by everything that identifies it,
/// so adding or removing series/windows never perturbs other tasks.
inline std::uint64_t task_seed(std::uint64_t root, const std::string& dataset,
                               const std::string& series_id, const Task& t) {
  std::uint64_t s = derive_seed(root, dataset + "/" + series_id);
  s = derive_seed(s, static_cast<std::uint64_t>(t.window));
  s = derive_seed(s, std::string_view(repr_name(t.repr)));
  s = derive_seed(s, std::string_view(detector_name(t.det)));
  return s;
}

}  // namespace detail

/// One pipeline cell: slice, row-normalize, optionally build/prune/normalize
/// the feature table, score, evaluate. Throws tsad::Error when the cell
/// cannot produce an AUC; the runner records those as skips.
inline ResultRecord run_one(const TimeSeries& ts, const std::string& dataset,
                            const detail::Task& task, const ExperimentConfig& cfg,
                            std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();

  WindowMatrix wm = slice(ts, task.window, cfg.stride);
  wm = normalize_rows(wm, cfg.row_normalization);

  FeatureMatrix fm;
  const Matrix* X = &wm.rows;
  if (task.repr == Repr::fe) {
    fm = prune(extract(wm, default_catalog(task.window, cfg.expensive_features)));
    if (cfg.feature_normalization) fm = normalize_feature_columns(fm);
    X = &fm.rows;
  }

  ScoreVector sv;
  if (task.det == Detector::iforest) {
    sv = if_score(if_fit(*X, seed), *X);
  } else {
    sv = lof_score(*X);
  }
  const double auc_value = auc(sv.scores, wm.window_labels);

  ResultRecord r;
  r.dataset = dataset;
  r.series_id = ts.id;
  r.window_size = task.window;
  r.representation = task.repr;
  r.detector = task.det;
  r.normalization = to_string(cfg.row_normalization);
  r.auc = auc_value;
  r.n_windows = wm.count();
  r.seed = seed;
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return r;
}

/// Runs the full grid (series x window x representation x detector).
/// Tasks execute on a worker pool, but commits happen strictly in task
/// order, so results.csv / skips.csv bytes are independent of parallelism.
/// runtime_ms goes to timings.csv only, keeping result bytes machine-stable.
inline RunOutput run_experiment(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  validate(cfg);
  fs::create_directories(cfg.output_dir);

  RunOutput out;
  std::vector<detail::LoadedSeries> series;
  for (const auto& spec : cfg.datasets) detail::load_dataset(spec, series, out.skips);

  std::vector<detail::Task> tasks;
  for (std::size_t i = 0; i < series.size(); ++i)
    for (auto w : cfg.window_sizes)
      for (auto r : cfg.representations)
        for (auto d : cfg.detectors) tasks.push_back({i, w, r, d});

  auto results_csv = open_out((fs::path(cfg.output_dir) / "results.csv").string());
  auto skips_csv = open_out((fs::path(cfg.output_dir) / "skips.csv").string());
  auto timings_csv = open_out((fs::path(cfg.output_dir) / "timings.csv").string());
  results_csv << result_csv_header << '\n';
  skips_csv << skip_csv_header << '\n';
  timings_csv << timing_csv_header << '\n';
  for (const auto& s : out.skips) write_skip_row(skips_csv, s);
  skips_csv.flush();

  struct Slot {
    std::optional<ResultRecord> record;
    std::optional<SkipRecord> skip;
    bool done = false;
  };
  std::vector<Slot> slots(tasks.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto compute = [&](std::size_t i) {
    const auto& task = tasks[i];
    const auto& ls = series[task.series_index];
    const std::uint64_t seed = detail::task_seed(cfg.seed, ls.dataset, ls.ts.id, task);
    Slot slot;
    try {
      slot.record = run_one(ls.ts, ls.dataset, task, cfg, seed);
    } catch (const Error& e) {
      slot.skip = SkipRecord{ls.dataset,
                             ls.ts.id,
                             task.window,
                             repr_name(task.repr),
                             detector_name(task.det),
                             errc_name(e.code())};
    }
    {
      std::lock_guard<std::mutex> lk(mu);
      slots[i] = std::move(slot);
      slots[i].done = true;
    }
    cv.notify_all();
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min(cfg.resolved_parallelism(), tasks.size()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) break;
        compute(i);
      }
    });
  }

  // in-order commit: write each slot as soon as its turn is complete
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::unique_lock<std::mutex> lk(mu);
    cv.wait(lk, [&] { return slots[i].done; });
    Slot slot = std::move(slots[i]);
    lk.unlock();
    if (slot.record) {
      write_result_row(results_csv, *slot.record);
      write_timing_row(timings_csv, *slot.record);
      results_csv.flush();
      timings_csv.flush();
      out.records.push_back(std::move(*slot.record));
    } else if (slot.skip) {
      write_skip_row(skips_csv, *slot.skip);
      skips_csv.flush();
      out.skips.push_back(std::move(*slot.skip));
    }
  }
  for (auto& t : pool) t.join();

  if (!results_csv || !skips_csv || !timings_csv)
    raise(Errc::io_error, "failed writing run outputs under " + cfg.output_dir);
  return out;
}

}  // namespace tsad
