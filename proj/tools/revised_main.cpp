#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "revised/errors.hpp"
#include "revised/kernels.hpp"
#include "revised/pipeline/stages.hpp"

namespace {

using revised::pipeline::RunConfig;
using revised::pipeline::TrainTarget;

// Exit codes: 0 success, 1 internal, 2 I/O, 3 data/config, 4 artifact
// mismatch.
int run(int argc, char** argv) {
  CLI::App app{"counterfactual explanations for process outcome predictions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> workers_override;
  std::string algorithm = "revised+";
  std::optional<double> lambda_dlc_override;
  std::string format = "text";

  app.add_option("--config", config_path, "run configuration file")->required();
  app.add_option("--seed", seed_override, "override the global seed");
  app.add_option("--workers", workers_override, "worker threads (0 = all cores)");

  auto* ingest = app.add_subcommand("ingest", "parse, preprocess and split the event log");
  auto* mine = app.add_subcommand("mine", "mine trace and label-specific constraints");
  auto* train_vae = app.add_subcommand("train-vae", "train the constraint-penalized VAE");
  auto* train_vae_plain =
      app.add_subcommand("train-vae-plain", "train the unconstrained VAE (ablation)");
  auto* train_clf = app.add_subcommand("train-clf", "train the outcome classifier");
  auto* generate = app.add_subcommand("generate", "run the counterfactual search");
  generate->add_option("--algorithm", algorithm, "revised+ or revise+")
      ->check(CLI::IsMember({"revised+", "revise+"}));
  generate->add_option("--lambda-dlc", lambda_dlc_override,
                       "override cf.lambda_dlc for this run");
  auto* evaluate = app.add_subcommand("evaluate", "compute the metric report");
  auto* report = app.add_subcommand("report", "print the written report");
  report->add_option("--format", format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    RunConfig cfg = revised::pipeline::load_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    if (workers_override) cfg.workers = *workers_override;

    if (ingest->parsed()) {
      revised::pipeline::cmd_ingest(cfg);
    } else if (mine->parsed()) {
      revised::pipeline::cmd_mine(cfg);
    } else if (train_vae->parsed()) {
      revised::pipeline::cmd_train(cfg, TrainTarget::kVae);
    } else if (train_vae_plain->parsed()) {
      revised::pipeline::cmd_train(cfg, TrainTarget::kVaePlain);
    } else if (train_clf->parsed()) {
      revised::pipeline::cmd_train(cfg, TrainTarget::kClassifier);
    } else if (generate->parsed()) {
      revised::pipeline::cmd_generate(cfg, algorithm, lambda_dlc_override);
    } else if (evaluate->parsed()) {
      revised::pipeline::cmd_evaluate(cfg);
    } else if (report->parsed()) {
      revised::pipeline::cmd_report(cfg, format);
    }
    return 0;
  } catch (const revised::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const revised::ArtifactError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const revised::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const revised::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
