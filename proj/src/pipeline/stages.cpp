#include "revised/pipeline/stages.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "revised/cf/generate.hpp"
#include "revised/declare/mine.hpp"
#include "revised/eventlog/container.hpp"
#include "revised/eventlog/csv.hpp"
#include "revised/eventlog/preprocess.hpp"
#include "revised/hash.hpp"
#include "revised/metrics/evaluate.hpp"
#include "revised/neural/serialize.hpp"
#include "revised/parallel.hpp"

namespace revised::pipeline {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t config_hash(const RunConfig& cfg) { return fnv1a64(cfg.canonical()); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << text;
  if (!out) throw IoError("failed writing file: " + path);
}

std::string algorithm_suffix(const std::string& algorithm) {
  if (algorithm == "revised+") return "revised+";
  if (algorithm == "revise+") return "revise+";
  throw DataError("unknown algorithm '" + algorithm + "' (expected revised+ or revise+)");
}

}  // namespace

WorkPaths::WorkPaths(const std::string& work_dir) : dir(work_dir) {}

std::string WorkPaths::results(const std::string& algorithm) const {
  return "cf_" + algorithm_suffix(algorithm) + ".jsonl";
}
std::string WorkPaths::per_case(const std::string& algorithm) const {
  return "percase_" + algorithm_suffix(algorithm) + ".csv";
}
std::string WorkPaths::abs(const std::string& rel) const {
  return (fs::path(dir) / rel).string();
}

void cmd_ingest(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.log_path.empty()) throw DataError("config: paths.log is required for ingest");
  const auto t0 = Clock::now();
  const WorkPaths wp(cfg.work_dir);
  fs::create_directories(wp.dir);
  Manifest manifest = Manifest::load_or_create(wp.dir);

  Manifest::HashMap inputs{{cfg.log_path, hash_file(cfg.log_path)}};
  if (manifest.up_to_date("ingest", inputs, config_hash(cfg))) {
    std::cout << "[ingest] up to date\n";
    return;
  }

  eventlog::EventLog log = eventlog::parse_csv_file(cfg.log_path);
  std::cout << "[ingest] parsed " << log.traces.size() << " cases, vocabulary "
            << log.vocab.size() << " (incl. EoS)\n";

  if (!cfg.outcome_activity.empty()) {
    const auto outcome = log.vocab.id(cfg.outcome_activity);
    auto res = eventlog::truncate_outcome_activity(log, outcome);
    std::cout << "[ingest] outcome-activity cut dropped " << res.dropped_traces
              << " emptied cases\n";
    log = std::move(res.log);
  }

  auto cut = eventlog::cut_at_quantile(log, cfg.quantile);
  std::cout << "[ingest] quantile cut at length " << cut.log.max_len << " truncated "
            << cut.truncated_traces << " cases\n";
  log = std::move(cut.log);
  log = eventlog::append_eos(log);

  auto split = eventlog::temporal_split(log, cfg.train_fraction);
  // Overlap cutting removes trailing events, including the EoS row; restore
  // the trace invariant on the affected train cases.
  const eventlog::ActivityId eos = split.train.vocab.eos();
  std::size_t restored = 0;
  for (auto& t : split.train.traces) {
    if (t.activities.back() != eos) {
      t.activities.push_back(eos);
      t.timestamps.push_back(t.timestamps.back());
      ++restored;
    }
  }
  std::cout << "[ingest] temporal split: " << split.train.traces.size() << " train / "
            << split.test.traces.size() << " test cases, " << split.cut_train_events
            << " overlap events cut, " << split.dropped_train_traces
            << " train cases dropped, EoS restored on " << restored << "\n";

  eventlog::save_log(split.train, wp.abs(wp.train_log));
  eventlog::save_log(split.test, wp.abs(wp.test_log));

  Manifest::HashMap outputs{{wp.train_log, hash_file(wp.abs(wp.train_log))},
                            {wp.test_log, hash_file(wp.abs(wp.test_log))}};
  manifest.record("ingest", inputs, outputs, config_hash(cfg), ms_since(t0));
  manifest.save();
}

void cmd_mine(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const WorkPaths wp(cfg.work_dir);
  Manifest manifest = Manifest::load_or_create(wp.dir);
  manifest.verify_artifact(wp.train_log);

  Manifest::HashMap inputs{{wp.train_log, hash_file(wp.abs(wp.train_log))}};
  if (manifest.up_to_date("mine", inputs, config_hash(cfg))) {
    std::cout << "[mine] up to date\n";
    return;
  }

  const eventlog::EventLog train = eventlog::load_log(wp.abs(wp.train_log));
  std::vector<eventlog::Trace> desired;
  for (const auto& t : train.traces) {
    if (t.label == cfg.desired_label) desired.push_back(t);
  }
  if (desired.empty()) {
    throw DataError("mine: no training trace carries the desired label " +
                    std::to_string(cfg.desired_label));
  }
  const auto cs = declare::derive_tdc_ldc(train.traces, desired, cfg.support,
                                          cfg.max_card, cfg.workers);
  std::cout << "[mine] " << cs.tdc.size() << " trace constraints, " << cs.ldc.size()
            << " label-specific constraints (support " << cfg.support << ")\n";
  declare::save_constraints(cs, train.vocab, wp.abs(wp.constraints));

  Manifest::HashMap outputs{{wp.constraints, hash_file(wp.abs(wp.constraints))}};
  manifest.record("mine", inputs, outputs, config_hash(cfg), ms_since(t0));
  manifest.save();
}

void cmd_train(const RunConfig& cfg, TrainTarget target) {
  cfg.validate();
  const auto t0 = Clock::now();
  const WorkPaths wp(cfg.work_dir);
  Manifest manifest = Manifest::load_or_create(wp.dir);
  manifest.verify_artifact(wp.train_log);

  const char* stage = target == TrainTarget::kVae        ? "train-vae"
                      : target == TrainTarget::kVaePlain ? "train-vae-plain"
                                                         : "train-clf";

  Manifest::HashMap inputs{{wp.train_log, hash_file(wp.abs(wp.train_log))}};
  if (target == TrainTarget::kVae) {
    manifest.verify_artifact(wp.constraints);
    inputs[wp.constraints] = hash_file(wp.abs(wp.constraints));
  }
  if (manifest.up_to_date(stage, inputs, config_hash(cfg))) {
    std::cout << "[" << stage << "] up to date\n";
    return;
  }

  const eventlog::EventLog train = eventlog::load_log(wp.abs(wp.train_log));
  Manifest::HashMap outputs;

  if (target == TrainTarget::kVae || target == TrainTarget::kVaePlain) {
    neural::TrainConfig tc = cfg.vae;
    std::vector<declare::Constraint> tdc;
    if (target == TrainTarget::kVae) {
      tdc = declare::load_constraints(wp.abs(wp.constraints), train.vocab).tdc;
      tc.seed = derive_seed(cfg.seed, "train-vae");
    } else {
      tc.lambda_dtc = 0.0;  // the plain manifold of the ablation
      tc.seed = derive_seed(cfg.seed, "train-vae-plain");
    }
    auto res = neural::train_vae(train, tdc, tc);

    std::string curve = "epoch,total,nll,kl,dtc\n";
    for (std::size_t e = 0; e < res.trajectory.size(); ++e) {
      const auto& l = res.trajectory[e];
      curve += std::to_string(e) + "," + std::to_string(l.total) + "," +
               std::to_string(l.nll) + "," + std::to_string(l.kl) + "," +
               std::to_string(l.dtc) + "\n";
    }
    const std::string model_rel =
        target == TrainTarget::kVae ? wp.vae_model : wp.vae_plain_model;
    const std::string curve_rel =
        target == TrainTarget::kVae ? wp.vae_loss : wp.vae_plain_loss;
    neural::save_vae(res.model, wp.abs(model_rel));
    write_text(wp.abs(curve_rel), curve);
    if (!res.trajectory.empty()) {
      std::cout << "[" << stage << "] final loss " << res.trajectory.back().total
                << " (nll " << res.trajectory.back().nll << ", kl "
                << res.trajectory.back().kl << ", dtc " << res.trajectory.back().dtc
                << ")\n";
    }
    outputs[model_rel] = hash_file(wp.abs(model_rel));
    outputs[curve_rel] = hash_file(wp.abs(curve_rel));
  } else {
    manifest.verify_artifact(wp.test_log);
    const eventlog::EventLog test = eventlog::load_log(wp.abs(wp.test_log));
    inputs[wp.test_log] = hash_file(wp.abs(wp.test_log));

    neural::TrainConfig tc = cfg.clf;
    tc.seed = derive_seed(cfg.seed, "train-clf");
    auto res = neural::train_classifier(train, tc, &test, cfg.clf_threshold);
    neural::save_classifier(res.model, wp.abs(wp.clf_model));
    std::string eval = "split,auc,accuracy\n";
    eval += "train," + std::to_string(res.train_eval.auc) + "," +
            std::to_string(res.train_eval.accuracy) + "\n";
    eval += "test," + std::to_string(res.test_eval.auc) + "," +
            std::to_string(res.test_eval.accuracy) + "\n";
    write_text(wp.abs(wp.clf_eval), eval);
    std::cout << "[train-clf] train auc " << res.train_eval.auc << ", test auc "
              << res.test_eval.auc << ", test accuracy " << res.test_eval.accuracy << "\n";
    outputs[wp.clf_model] = hash_file(wp.abs(wp.clf_model));
    outputs[wp.clf_eval] = hash_file(wp.abs(wp.clf_eval));
  }

  manifest.record(stage, inputs, outputs, config_hash(cfg), ms_since(t0));
  manifest.save();
}

void cmd_generate(const RunConfig& cfg, const std::string& algorithm,
                  std::optional<double> lambda_dlc_override) {
  cfg.validate();
  const std::string alg = algorithm_suffix(algorithm);
  const bool revised = alg == "revised+";
  if (!revised && lambda_dlc_override.has_value() && *lambda_dlc_override != 0.0) {
    throw DataError("generate: revise+ has no DLC term; --lambda-dlc must stay 0");
  }

  const auto t0 = Clock::now();
  const WorkPaths wp(cfg.work_dir);
  Manifest manifest = Manifest::load_or_create(wp.dir);
  manifest.verify_artifact(wp.test_log);
  manifest.verify_artifact(wp.clf_model);

  const std::string model_rel = revised ? wp.vae_model : wp.vae_plain_model;
  manifest.verify_artifact(model_rel);

  Manifest::HashMap inputs{{wp.test_log, hash_file(wp.abs(wp.test_log))},
                           {wp.clf_model, hash_file(wp.abs(wp.clf_model))},
                           {model_rel, hash_file(wp.abs(model_rel))}};
  if (revised) {
    manifest.verify_artifact(wp.constraints);
    inputs[wp.constraints] = hash_file(wp.abs(wp.constraints));
  }
  const std::string results_rel = wp.results(alg);
  if (manifest.up_to_date("generate-" + alg, inputs, config_hash(cfg))) {
    std::cout << "[generate " << alg << "] up to date\n";
    return;
  }

  const eventlog::EventLog test = eventlog::load_log(wp.abs(wp.test_log));
  const neural::VaeModel vae = neural::load_vae(wp.abs(model_rel));
  const neural::ClassifierModel clf = neural::load_classifier(wp.abs(wp.clf_model));
  neural::require_vocab_hash(vae.vocab_hash(), test.vocab.hash(), "vae model");
  neural::require_vocab_hash(clf.vocab_hash(), test.vocab.hash(), "classifier model");

  std::vector<declare::Constraint> ldc;
  if (revised) {
    ldc = declare::load_constraints(wp.abs(wp.constraints), test.vocab).ldc;
  }

  cf::CfConfig cc = cfg.cfg_cf;
  if (lambda_dlc_override) cc.lambda_dlc = *lambda_dlc_override;

  // factuals: test traces currently predicted away from the desired label
  std::vector<const eventlog::Trace*> factuals;
  for (const auto& t : test.traces) {
    const auto enc = eventlog::encode_trace(t, test.vocab, test.max_len);
    const double p1 = clf.predict(enc.m).probability;
    const double desired = cc.desired_label == 1 ? p1 : 1.0 - p1;
    if (desired <= cc.threshold_p) factuals.push_back(&t);
  }
  if (factuals.empty()) {
    std::cout << "[generate " << alg
              << "] warning: no test trace is predicted against the desired label; "
                 "writing empty results\n";
  }

  std::vector<cf::CfResult> results(factuals.size());
  parallel_for(factuals.size(), cfg.workers, [&](std::size_t i) {
    results[i] = revised
                     ? cf::generate(*factuals[i], vae, clf, ldc, cc, test.vocab)
                     : cf::generate_revise_plus(*factuals[i], vae, clf, cc, test.vocab);
  });

  // independent viability re-check of every accepted candidate
  for (const auto& r : results) {
    for (const auto& c : r.candidates) {
      const auto enc = eventlog::one_hot(c.activities, test.vocab, test.max_len);
      const double p1 = clf.predict(enc.m).probability;
      const double desired = cc.desired_label == 1 ? p1 : 1.0 - p1;
      const bool ldc_ok =
          !revised || declare::weighted_violations(
                          ldc, std::span<const eventlog::ActivityId>(c.activities)) == 0.0;
      if (!(desired > cc.threshold_p) || !ldc_ok) {
        throw Error("internal: accepted candidate fails the viability re-check");
      }
    }
  }

  std::size_t total_candidates = 0;
  for (const auto& r : results) total_candidates += r.candidates.size();
  std::cout << "[generate " << alg << "] " << factuals.size() << " factuals, "
            << total_candidates << " distinct counterfactuals\n";

  cf::save_results(results, test.vocab, alg, wp.abs(results_rel));
  Manifest::HashMap outputs{{results_rel, hash_file(wp.abs(results_rel))}};
  manifest.record("generate-" + alg, inputs, outputs, config_hash(cfg), ms_since(t0));
  manifest.save();
}

void cmd_evaluate(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const WorkPaths wp(cfg.work_dir);
  Manifest manifest = Manifest::load_or_create(wp.dir);
  manifest.verify_artifact(wp.train_log);
  manifest.verify_artifact(wp.clf_model);
  manifest.verify_artifact(wp.constraints);

  const eventlog::EventLog train = eventlog::load_log(wp.abs(wp.train_log));
  const neural::ClassifierModel clf = neural::load_classifier(wp.abs(wp.clf_model));
  neural::require_vocab_hash(clf.vocab_hash(), train.vocab.hash(), "classifier model");
  const auto cs = declare::load_constraints(wp.abs(wp.constraints), train.vocab);

  Manifest::HashMap inputs{{wp.train_log, hash_file(wp.abs(wp.train_log))},
                           {wp.clf_model, hash_file(wp.abs(wp.clf_model))},
                           {wp.constraints, hash_file(wp.abs(wp.constraints))}};

  std::vector<metrics::MetricRow> rows;
  std::vector<std::pair<std::string, std::string>> per_case_files;
  for (const std::string alg : {"revised+", "revise+"}) {
    const std::string rel = wp.results(alg);
    if (!fs::exists(wp.abs(rel))) continue;
    manifest.verify_artifact(rel);
    inputs[rel] = hash_file(wp.abs(rel));

    const auto results = cf::load_results(wp.abs(rel), train.vocab);
    metrics::EvaluationInput in;
    in.algorithm = alg;
    in.log_name = cfg.log_name;
    in.results = results;
    in.reference = &train;
    in.clf = &clf;
    in.tdc = cs.tdc;
    in.ldc = cs.ldc;
    in.knn = cfg.knn;
    auto ev = metrics::evaluate(in);
    rows.push_back(ev.summary);
    per_case_files.emplace_back(wp.per_case(alg),
                                metrics::render_per_candidate_csv(ev.per_candidate));
  }
  if (rows.empty()) {
    throw DataError("evaluate: no results files found; run generate first");
  }

  const auto all_rows = metrics::with_averages(rows);
  write_text(wp.abs(wp.report_csv), metrics::render_report_csv(all_rows));
  write_text(wp.abs(wp.report_txt), metrics::render_report_text(all_rows));
  Manifest::HashMap outputs{{wp.report_csv, hash_file(wp.abs(wp.report_csv))},
                            {wp.report_txt, hash_file(wp.abs(wp.report_txt))}};
  for (const auto& [rel, text] : per_case_files) {
    write_text(wp.abs(rel), text);
    outputs[rel] = hash_file(wp.abs(rel));
  }
  std::cout << "[evaluate] wrote " << wp.report_csv << ", " << wp.report_txt << " and "
            << per_case_files.size() << " per-case files\n";

  manifest.record("evaluate", inputs, outputs, config_hash(cfg), ms_since(t0));
  manifest.save();
}

void cmd_report(const RunConfig& cfg, const std::string& format) {
  const WorkPaths wp(cfg.work_dir);
  const std::string rel = format == "csv" ? wp.report_csv : wp.report_txt;
  if (format != "csv" && format != "text") {
    throw DataError("report: format must be csv or text");
  }
  std::ifstream in(wp.abs(rel), std::ios::binary);
  if (!in) {
    throw IoError("report: " + wp.abs(rel) + " not found; run evaluate first");
  }
  std::cout << in.rdbuf();
}

}  // namespace revised::pipeline
