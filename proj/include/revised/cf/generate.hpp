#pragma once

#include <span>
#include <string>

#include "revised/declare/check.hpp"
#include "revised/declare/soft.hpp"
#include "revised/eventlog/encode.hpp"
#include "revised/neural/classifier.hpp"
#include "revised/neural/vae.hpp"

namespace revised::cf {

using eventlog::ActivityId;
using eventlog::EncodedTrace;
using eventlog::Trace;
using eventlog::Vocabulary;

struct CfConfig {
  double lambda_hinge = 1.0;
  double lambda_dist = 1.0;
  double lambda_dlc = 1.0;
  double beta = 1.0;        // elastic-net L1 scale
  double alpha = 0.05;      // latent step size
  double threshold_p = 0.5; // acceptance probability threshold
  std::size_t max_iter = 500;
  int desired_label = 1;

  // zeta in the hinge term: -1 when the desired label is 0, +1 when it is 1
  double zeta() const { return desired_label == 1 ? 1.0 : -1.0; }
  void validate() const;
};

struct CfLossBreakdown {
  double total = 0.0;
  double hinge = 0.0;
  double dist = 0.0;
  double dlc = 0.0;
};

// Loss of a soft candidate matrix against its factual:
//   hinge = max(0, 1 - zeta * logit), logit from the classifier on the soft
//   matrix; dist = beta*|delta|_1 + |delta|_2^2 over the whole padded grid,
//   delta = factual - soft; dlc = weighted soft violations of the
//   label-specific constraints. total combines them with the lambdas.
CfLossBreakdown cf_loss(const Mat& soft, const EncodedTrace& factual,
                        const neural::ClassifierModel& clf,
                        std::span<const declare::Constraint> ldc, const CfConfig& cfg);

struct CfCandidate {
  std::vector<ActivityId> activities;  // hard-decoded, EoS-masked
  bool has_eos = false;
  double probability = 0.0;  // classifier P(label=1) on the hard one-hot
  CfLossBreakdown loss;
  std::size_t iteration = 0;
};

struct CfResult {
  Trace factual;
  double factual_probability = 0.0;  // P(label=1) on the factual
  std::vector<CfCandidate> candidates;  // deduplicated, first-seen order
  std::size_t iterations = 0;
  std::size_t accepted_before_dedup = 0;
};

// Latent-space gradient search: start at the posterior mean of the factual,
// take max_iter fixed-size gradient steps on the CF loss, and harvest every
// decoded candidate that the classifier accepts past threshold_p on its
// hard-decoded form and (REVISED+ only) that satisfies every label-specific
// constraint under the hard check. Deterministic; runs the full budget.
CfResult generate(const Trace& factual, const neural::VaeModel& vae,
                  const neural::ClassifierModel& clf,
                  std::span<const declare::Constraint> ldc, const CfConfig& cfg,
                  const Vocabulary& vocab);

// REVISE+ ablation: the same loop with the DLC term forced to zero and
// acceptance reduced to the probability test.
CfResult generate_revise_plus(const Trace& factual, const neural::VaeModel& vae_plain,
                              const neural::ClassifierModel& clf, const CfConfig& cfg,
                              const Vocabulary& vocab);

// One JSON record per factual, line-delimited.
std::string serialize_results(std::span<const CfResult> results, const Vocabulary& vocab,
                              const std::string& algorithm);
std::vector<CfResult> parse_results(const std::string& text, const Vocabulary& vocab,
                                    std::string* algorithm = nullptr);
void save_results(std::span<const CfResult> results, const Vocabulary& vocab,
                  const std::string& algorithm, const std::string& path);
std::vector<CfResult> load_results(const std::string& path, const Vocabulary& vocab,
                                   std::string* algorithm = nullptr);

}  // namespace revised::cf
