#pragma once

#include <optional>
#include <span>
#include <string>

#include "revised/cf/generate.hpp"
#include "revised/metrics/distances.hpp"
#include "revised/neural/classifier.hpp"

namespace revised::metrics {

using cf::CfResult;
using eventlog::EventLog;

// Fraction of the k nearest reference traces (dl_edit over activity
// sequences, ties broken by case id) whose classifier-predicted label equals
// the counterfactual's predicted label.
double y_nn(std::span<const ActivityId> cf_activities, const EventLog& reference,
            const neural::ClassifierModel& clf, std::size_t k);

// 1 / sum of pairwise EMDs. Fewer than two counterfactuals give 0; an
// all-zero pairwise sum gives +infinity (callers exclude the sentinel from
// averages).
double diversity(std::span<const std::vector<ActivityId>> cfs, ActivityId eos);

// 100 * accepted-before-dedup / iterations, over all results.
double success_rate(std::span<const CfResult> results);

// Percentage of accepted candidates with zero hard violations over the
// union TDC + LDC (all template kinds). Zero candidates give 0.
double plausible_rate(std::span<const CfResult> results,
                      std::span<const declare::Constraint> tdc,
                      std::span<const declare::Constraint> ldc);

// One summary row of the comparison table. Distance columns hold averages
// over plausible candidates only; has_distances is false when no plausible
// candidate exists ("/" in reports).
struct MetricRow {
  std::string algorithm;
  std::string log_name;
  double success_rate = 0.0;
  double plausible_rate = 0.0;
  bool has_distances = false;
  double cf_len = 0.0;
  double y_nn = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double emd = 0.0;
  double l0 = 0.0;
  double dl_edit = 0.0;
  double lcp = 0.0;
  double diversity = 0.0;
};

// Per-candidate breakdown row (one line per accepted counterfactual).
struct PerCandidateRow {
  std::string case_id;
  std::vector<std::string> candidate;  // activity names
  double violations_pct = 0.0;  // share of TDC+LDC constraints violated
  bool plausible = false;
  std::size_t cf_len = 0;  // events strictly before EoS
  double y_nn = 0.0;
  double l1 = 0.0, l2 = 0.0, emd = 0.0, l0 = 0.0, dl_edit = 0.0, lcp = 0.0;
  double diversity = 0.0;  // per-factual value, repeated on each row
};

struct EvaluationInput {
  std::string algorithm;
  std::string log_name;
  std::span<const CfResult> results;
  const EventLog* reference = nullptr;  // neighbour pool for y-NN
  const neural::ClassifierModel* clf = nullptr;
  std::span<const declare::Constraint> tdc;
  std::span<const declare::Constraint> ldc;
  std::size_t knn = 5;
};

struct Evaluation {
  MetricRow summary;
  std::vector<PerCandidateRow> per_candidate;
};

Evaluation evaluate(const EvaluationInput& in);

// Appends the unweighted per-algorithm mean over logs ("(avg.)" rows) when
// an algorithm spans more than one log. Rows without distances enter the
// distance-column means as zero.
std::vector<MetricRow> with_averages(std::vector<MetricRow> rows);

// Fixed column order: Success Rate, Plausible Rate, |CF|, y-NN, L1, L2,
// EMD, L0, DL Edit, LCP, Diversity. Suppressed distance columns render as
// "/".
std::string render_report_csv(std::span<const MetricRow> rows);
std::string render_report_text(std::span<const MetricRow> rows);
std::string render_per_candidate_csv(std::span<const PerCandidateRow> rows);

}  // namespace revised::metrics
