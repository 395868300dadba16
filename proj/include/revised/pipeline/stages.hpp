#pragma once

#include <optional>
#include <string>

#include "revised/pipeline/config.hpp"
#include "revised/pipeline/manifest.hpp"

namespace revised::pipeline {

// Work-directory layout shared by all stages.
struct WorkPaths {
  explicit WorkPaths(const std::string& work_dir);
  std::string dir;
  std::string train_log = "train.log.json";
  std::string test_log = "test.log.json";
  std::string constraints = "constraints.txt";
  std::string vae_model = "vae.model";
  std::string vae_plain_model = "vae_plain.model";
  std::string clf_model = "clf.model";
  std::string vae_loss = "vae_loss.csv";
  std::string vae_plain_loss = "vae_plain_loss.csv";
  std::string clf_eval = "clf_eval.csv";
  std::string report_csv = "report.csv";
  std::string report_txt = "report.txt";

  std::string results(const std::string& algorithm) const;     // cf_<alg>.jsonl
  std::string per_case(const std::string& algorithm) const;    // percase_<alg>.csv
  std::string abs(const std::string& rel) const;
};

enum class TrainTarget { kVae, kVaePlain, kClassifier };

// Pipeline stages. Each loads its inputs from the work dir, verifies them
// against the manifest, skips when up to date, and records what it wrote.
void cmd_ingest(const RunConfig& cfg);
void cmd_mine(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg, TrainTarget target);
// lambda_dlc_override: explicit CLI override of cf.lambda_dlc; a nonzero
// value combined with revise+ is a config contradiction.
void cmd_generate(const RunConfig& cfg, const std::string& algorithm,
                  std::optional<double> lambda_dlc_override = std::nullopt);
void cmd_evaluate(const RunConfig& cfg);
void cmd_report(const RunConfig& cfg, const std::string& format);

}  // namespace revised::pipeline
