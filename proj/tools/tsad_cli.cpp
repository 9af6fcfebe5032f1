// Command-line front end for the pipeline. Subcommands cover the whole flow
// (synth -> run -> report) plus single-step utilities (extract, detect,
// evaluate) for poking at individual stages.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 run finished but some
// cells were skipped.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsad/tsad.hpp"

namespace {

tsad::TimeSeries load_series(const std::string& path, bool ucr, const std::string& value_column,
                             const std::string& label_column) {
  if (ucr) return tsad::load_ucr(path);
  const std::optional<std::string> label =
      label_column.empty() ? std::nullopt : std::optional<std::string>(label_column);
  return tsad::load_csv(path, value_column, label);
}

/// Numeric table reader for `detect`: first column is window_start, every
/// other column is a feature/value column.
tsad::Matrix load_table(const std::string& path, std::vector<std::size_t>& starts) {
  const tsad::CsvTable t = tsad::read_csv(path);
  if (t.header.size() < 2 || t.header[0] != "window_start")
    tsad::raise(tsad::Errc::missing_column, "expected a window_start column in " + path);
  tsad::Matrix X(t.rows.size(), t.header.size() - 1);
  starts.resize(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].size() != t.header.size())
      tsad::raise(tsad::Errc::io_error, "ragged row in " + path);
    const auto s = tsad::parse_int(t.rows[i][0]);
    if (!s || *s < 0) tsad::raise(tsad::Errc::io_error, "bad window_start in " + path);
    starts[i] = static_cast<std::size_t>(*s);
    for (std::size_t j = 1; j < t.header.size(); ++j) {
      const auto v = tsad::parse_double(t.rows[i][j]);
      if (!v) tsad::raise(tsad::Errc::non_finite_value, "bad cell in " + path);
      X(i, j - 1) = *v;
    }
  }
  return X;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"window-based time-series anomaly detection pipeline"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "run a configured experiment grid");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();

  // --- extract -----------------------------------------------------------
  auto* extract_cmd = app.add_subcommand("extract", "series -> feature table CSV");
  struct {
    std::string input, out, value_column = "value", label_column = "label";
    std::string row_norm = "none";
    std::size_t window = 32, stride = 1;
    bool ucr = false, expensive = false, keep_nonfinite = false;
  } ex;
  extract_cmd->add_option("--input", ex.input, "series file")->required();
  extract_cmd->add_option("--out", ex.out, "output feature CSV")->required();
  extract_cmd->add_option("--window", ex.window, "window size W");
  extract_cmd->add_option("--stride", ex.stride, "stride alpha");
  extract_cmd->add_option("--value-column", ex.value_column, "value column (csv input)");
  extract_cmd->add_option("--label-column", ex.label_column,
                          "label column (csv input; empty = unlabeled)");
  extract_cmd->add_option("--row-norm", ex.row_norm,
                          "none | minmax | median-iqr | mean-std");
  extract_cmd->add_flag("--ucr", ex.ucr, "input uses the archive filename convention");
  extract_cmd->add_flag("--expensive", ex.expensive, "include the expensive feature tier");
  extract_cmd->add_flag("--keep-nonfinite", ex.keep_nonfinite, "skip column pruning");

  // --- detect --------------------------------------------------------------
  auto* detect_cmd = app.add_subcommand("detect", "feature/window table CSV -> scores CSV");
  struct {
    std::string input, out, detector = "IF";
    std::uint64_t seed = 0;
    int trees = 100, subsample = 256, k = 20;
  } de;
  detect_cmd->add_option("--input", de.input, "table CSV (from extract)")->required();
  detect_cmd->add_option("--out", de.out, "output scores CSV")->required();
  detect_cmd->add_option("--detector", de.detector, "IF | LOF");
  detect_cmd->add_option("--seed", de.seed, "random seed (IF)");
  detect_cmd->add_option("--trees", de.trees, "IF tree count");
  detect_cmd->add_option("--subsample", de.subsample, "IF subsample size");
  detect_cmd->add_option("--k", de.k, "LOF neighborhood size");

  // --- evaluate ------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("evaluate", "scores CSV + labeled series -> AUC");
  struct {
    std::string scores, series, value_column = "value", label_column = "label";
    std::size_t window = 32, stride = 1;
    bool ucr = false;
  } ev;
  eval_cmd->add_option("--scores", ev.scores, "scores CSV (from detect)")->required();
  eval_cmd->add_option("--series", ev.series, "labeled series file")->required();
  eval_cmd->add_option("--window", ev.window, "window size W used for the scores");
  eval_cmd->add_option("--stride", ev.stride, "stride alpha used for the scores");
  eval_cmd->add_option("--value-column", ev.value_column, "value column (csv input)");
  eval_cmd->add_option("--label-column", ev.label_column, "label column (csv input)");
  eval_cmd->add_flag("--ucr", ev.ucr, "series uses the archive filename convention");

  // --- report --------------------------------------------------------------
  auto* report_cmd = app.add_subcommand("report", "results CSV -> rank/p tables + CD diagrams");
  std::string report_in, report_out;
  report_cmd->add_option("--in", report_in, "results CSV")->required();
  report_cmd->add_option("--out", report_out, "report directory")->required();

  // --- synth ---------------------------------------------------------------
  auto* synth_cmd = app.add_subcommand("synth", "write a labeled synthetic corpus");
  struct {
    std::uint64_t seed = 42;
    std::size_t n = 10, m = 1024;
    std::string out;
  } sy;
  synth_cmd->add_option("--seed", sy.seed, "corpus seed");
  synth_cmd->add_option("--n", sy.n, "number of series");
  synth_cmd->add_option("--m", sy.m, "points per series (>= 512)");
  synth_cmd->add_option("--out", sy.out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      tsad::ExperimentConfig cfg;
      try {
        cfg = tsad::load_config(config_path);
      } catch (const tsad::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
      }
      const tsad::RunOutput out = tsad::run_experiment(cfg);
      std::cout << out.records.size() << " results, " << out.skips.size() << " skips -> "
                << cfg.output_dir << '\n';
      return out.skips.empty() ? 0 : 2;
    }

    if (*extract_cmd) {
      const auto ts = load_series(ex.input, ex.ucr, ex.value_column, ex.label_column);
      auto wm = tsad::slice(ts, ex.window, ex.stride);
      wm = tsad::normalize_rows(wm, tsad::parse_row_norm(ex.row_norm));
      auto fm = tsad::extract(wm, tsad::default_catalog(ex.window, ex.expensive));
      if (!ex.keep_nonfinite) fm = tsad::prune(fm);
      tsad::save_feature_csv(fm, ex.out);
      std::cout << fm.rows.rows() << " windows x " << fm.rows.cols() << " features -> "
                << ex.out << '\n';
      return 0;
    }

    if (*detect_cmd) {
      std::vector<std::size_t> starts;
      const tsad::Matrix X = load_table(de.input, starts);
      tsad::ScoreVector sv;
      if (de.detector == "IF") {
        sv = tsad::if_score(tsad::if_fit(X, de.trees, de.subsample, de.seed), X);
      } else if (de.detector == "LOF") {
        sv = tsad::lof_score(X, de.k);
      } else {
        std::cerr << "unknown detector '" << de.detector << "' (expected IF or LOF)\n";
        return 1;
      }
      tsad::save_scores_csv(sv, starts, de.out);
      std::cout << sv.detector_id << " [" << sv.params_digest << "] -> " << de.out << '\n';
      return 0;
    }

    if (*eval_cmd) {
      const tsad::CsvTable t = tsad::read_csv(ev.scores);
      const auto score_col = t.column("score");
      if (!score_col) tsad::raise(tsad::Errc::missing_column, "score column in " + ev.scores);
      std::vector<double> scores;
      for (const auto& row : t.rows) {
        const auto v = tsad::parse_double(row[*score_col]);
        if (!v) tsad::raise(tsad::Errc::io_error, "bad score in " + ev.scores);
        scores.push_back(*v);
      }
      const auto ts = load_series(ev.series, ev.ucr, ev.value_column, ev.label_column);
      const auto wm = tsad::slice(ts, ev.window, ev.stride);
      if (!wm.has_labels())
        tsad::raise(tsad::Errc::missing_labels, "series has no labels: " + ev.series);
      const double a = tsad::auc(scores, wm.window_labels);
      std::cout << "auc," << tsad::format_double(a) << '\n';
      return 0;
    }

    if (*report_cmd) {
      const auto records = tsad::read_results_csv(report_in);
      tsad::generate_report(records, report_out);
      std::cout << "report -> " << report_out << '\n';
      return 0;
    }

    if (*synth_cmd) {
      const auto corpus = tsad::synth_corpus(sy.seed, sy.n, sy.m);
      std::filesystem::create_directories(sy.out);
      for (const auto& ts : corpus)
        tsad::save_csv(ts, (std::filesystem::path(sy.out) / (ts.id + ".csv")).string());
      std::cout << corpus.size() << " series -> " << sy.out << '\n';
      return 0;
    }
  } catch (const tsad::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
