#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "tsad/error.hpp"
#include "tsad/normalize.hpp"
#include "tsad/runner/records.hpp"

namespace tsad {

struct CurationSpec {
  double max_contamination = 0.05;
  double corr_threshold = 0.9;
};

struct DatasetSpec {
  std::string name;
  std::string path;                   // a file or a directory of series files
  std::string loader = "csv";         // "csv" | "ucr"
  std::string value_column = "value"; // csv loader only
  std::string label_column = "label"; // csv loader only; "" = unlabeled
  std::optional<CurationSpec> curation;
};

struct ExperimentConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<std::size_t> window_sizes = {32, 64, 128, 256};
  std::size_t stride = 1;
  std::vector<Repr> representations = {Repr::ts, Repr::fe};
  std::vector<Detector> detectors = {Detector::iforest, Detector::lof};
  RowNorm row_normalization = RowNorm::none;
  bool feature_normalization = false;
  bool expensive_features = false;
  std::uint64_t seed = 0;
  std::size_t parallelism = 0;  // 0 = auto (hardware concurrency)
  std::string output_dir = "out";

  std::size_t resolved_parallelism() const {
    if (parallelism > 0) return parallelism;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
  }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) raise(Errc::config_error, "unknown key '" + key + "' in " + where);
  }
}

}  // namespace detail

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.datasets.empty()) raise(Errc::config_error, "datasets must be nonempty");
  if (cfg.window_sizes.empty()) raise(Errc::config_error, "window_sizes must be nonempty");
  for (auto w : cfg.window_sizes)
    if (w < 2) raise(Errc::config_error, "window sizes must be >= 2");
  if (cfg.stride < 1) raise(Errc::config_error, "stride must be >= 1");
  if (cfg.representations.empty()) raise(Errc::config_error, "representations must be nonempty");
  if (cfg.detectors.empty()) raise(Errc::config_error, "detectors must be nonempty");
  for (const auto& d : cfg.datasets) {
    if (d.name.empty()) raise(Errc::config_error, "dataset name must be nonempty");
    if (d.path.empty()) raise(Errc::config_error, "dataset path must be nonempty");
    if (d.loader != "csv" && d.loader != "ucr")
      raise(Errc::config_error, "loader must be 'csv' or 'ucr', got '" + d.loader + "'");
  }
  if (cfg.output_dir.empty()) raise(Errc::config_error, "output_dir must be nonempty");
}

inline nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["datasets"] = nlohmann::json::array();
  for (const auto& d : cfg.datasets) {
    nlohmann::json jd;
    jd["name"] = d.name;
    jd["path"] = d.path;
    jd["loader"] = d.loader;
    jd["value_column"] = d.value_column;
    jd["label_column"] = d.label_column;
    if (d.curation) {
      jd["curation"] = {{"max_contamination", d.curation->max_contamination},
                        {"corr_threshold", d.curation->corr_threshold}};
    }
    j["datasets"].push_back(jd);
  }
  j["window_sizes"] = cfg.window_sizes;
  j["stride"] = cfg.stride;
  j["representations"] = nlohmann::json::array();
  for (auto r : cfg.representations) j["representations"].push_back(repr_name(r));
  j["detectors"] = nlohmann::json::array();
  for (auto d : cfg.detectors) j["detectors"].push_back(detector_name(d));
  j["row_normalization"] = to_string(cfg.row_normalization);
  j["feature_normalization"] = cfg.feature_normalization;
  j["expensive_features"] = cfg.expensive_features;
  j["seed"] = cfg.seed;
  if (cfg.parallelism == 0)
    j["parallelism"] = "auto";
  else
    j["parallelism"] = cfg.parallelism;
  j["output_dir"] = cfg.output_dir;
  return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) raise(Errc::config_error, "config root must be a JSON object");
  detail::reject_unknown_keys(
      j,
      {"datasets", "window_sizes", "stride", "representations", "detectors",
       "row_normalization", "feature_normalization", "expensive_features", "seed",
       "parallelism", "output_dir"},
      "config");
  ExperimentConfig cfg;
  try {
    if (!j.contains("datasets")) raise(Errc::config_error, "config needs a 'datasets' list");
    for (const auto& jd : j.at("datasets")) {
      detail::reject_unknown_keys(
          jd, {"name", "path", "loader", "value_column", "label_column", "curation"},
          "dataset entry");
      DatasetSpec d;
      d.name = jd.at("name").get<std::string>();
      d.path = jd.at("path").get<std::string>();
      if (jd.contains("loader")) d.loader = jd.at("loader").get<std::string>();
      if (jd.contains("value_column")) d.value_column = jd.at("value_column").get<std::string>();
      if (jd.contains("label_column")) d.label_column = jd.at("label_column").get<std::string>();
      if (jd.contains("curation")) {
        const auto& jc = jd.at("curation");
        detail::reject_unknown_keys(jc, {"max_contamination", "corr_threshold"}, "curation");
        CurationSpec c;
        if (jc.contains("max_contamination"))
          c.max_contamination = jc.at("max_contamination").get<double>();
        if (jc.contains("corr_threshold"))
          c.corr_threshold = jc.at("corr_threshold").get<double>();
        d.curation = c;
      }
      cfg.datasets.push_back(std::move(d));
    }
    if (j.contains("window_sizes"))
      cfg.window_sizes = j.at("window_sizes").get<std::vector<std::size_t>>();
    if (j.contains("stride")) cfg.stride = j.at("stride").get<std::size_t>();
    if (j.contains("representations")) {
      cfg.representations.clear();
      for (const auto& s : j.at("representations"))
        cfg.representations.push_back(parse_repr(s.get<std::string>()));
    }
    if (j.contains("detectors")) {
      cfg.detectors.clear();
      for (const auto& s : j.at("detectors"))
        cfg.detectors.push_back(parse_detector(s.get<std::string>()));
    }
    if (j.contains("row_normalization"))
      cfg.row_normalization = parse_row_norm(j.at("row_normalization").get<std::string>());
    if (j.contains("feature_normalization"))
      cfg.feature_normalization = j.at("feature_normalization").get<bool>();
    if (j.contains("expensive_features"))
      cfg.expensive_features = j.at("expensive_features").get<bool>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("parallelism")) {
      const auto& jp = j.at("parallelism");
      if (jp.is_string()) {
        if (jp.get<std::string>() != "auto")
          raise(Errc::config_error, "parallelism must be a positive integer or \"auto\"");
        cfg.parallelism = 0;
      } else {
        cfg.parallelism = jp.get<std::size_t>();
        if (cfg.parallelism == 0)
          raise(Errc::config_error, "parallelism must be a positive integer or \"auto\"");
      }
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::config_error, std::string("malformed config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::config_error, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::config_error, std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

inline void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path) {
  auto out = open_out(path.string());
  out << to_json(cfg).dump(2) << '\n';
}

}  // namespace tsad
