#pragma once

#include <cstdint>
#include <string>

#include "revised/cf/generate.hpp"
#include "revised/neural/vae.hpp"

namespace revised::pipeline {

// Full run configuration. File format: one `key = value` per line, dotted
// keys for nesting, '#' comments. Unknown keys are rejected.
struct RunConfig {
  // paths
  std::string log_path;
  std::string work_dir;
  std::string log_name;  // report label; defaults to the log file stem

  // preprocessing
  std::string outcome_activity;  // empty: no outcome-activity truncation
  double quantile = 0.9;
  double train_fraction = 0.7;

  // mining
  double support = 1.0;
  int max_card = 3;
  int desired_label = 1;

  // neural
  neural::TrainConfig vae;
  neural::TrainConfig clf;
  double clf_threshold = 0.5;

  // counterfactual search
  cf::CfConfig cfg_cf;

  // metrics
  std::size_t knn = 5;

  std::uint64_t seed = 42;
  std::size_t workers = 0;  // 0: hardware concurrency

  void validate() const;
  // Canonical serialization used for config fingerprints.
  std::string canonical() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace revised::pipeline
