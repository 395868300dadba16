#include "revised/metrics/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace revised::metrics {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << v;
  std::string s = os.str();
  // trim trailing zeros but keep at least one decimal
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

}  // namespace

double y_nn(std::span<const ActivityId> cf_activities, const EventLog& reference,
            const neural::ClassifierModel& clf, std::size_t k) {
  if (k == 0) throw ArgumentError("y_nn: k must be positive");
  if (reference.traces.size() < k) {
    throw ArgumentError("y_nn: reference log has fewer than k traces");
  }
  const std::size_t max_len = clf.dims().max_len;
  const int cf_label =
      clf.predicted_label(eventlog::one_hot({cf_activities.begin(), cf_activities.end()},
                                            reference.vocab, max_len)
                              .m);

  struct Neighbour {
    std::size_t dist;
    const eventlog::Trace* trace;
  };
  std::vector<Neighbour> nb;
  nb.reserve(reference.traces.size());
  for (const auto& t : reference.traces) {
    nb.push_back({dl_edit(cf_activities, std::span<const ActivityId>(t.activities)), &t});
  }
  std::sort(nb.begin(), nb.end(), [](const Neighbour& a, const Neighbour& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.trace->case_id < b.trace->case_id;
  });

  std::size_t same = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto enc = eventlog::one_hot(nb[i].trace->activities, reference.vocab, max_len);
    if (clf.predicted_label(enc.m) == cf_label) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(k);
}

double diversity(std::span<const std::vector<ActivityId>> cfs, ActivityId eos) {
  if (cfs.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < cfs.size(); ++i) {
    for (std::size_t j = i + 1; j < cfs.size(); ++j) {
      total += emd(std::span<const ActivityId>(cfs[i]),
                   std::span<const ActivityId>(cfs[j]), eos);
    }
  }
  if (total == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / total;
}

double success_rate(std::span<const CfResult> results) {
  std::size_t accepted = 0, iters = 0;
  for (const CfResult& r : results) {
    accepted += r.accepted_before_dedup;
    iters += r.iterations;
  }
  if (iters == 0) return 0.0;
  return 100.0 * static_cast<double>(accepted) / static_cast<double>(iters);
}

double plausible_rate(std::span<const CfResult> results,
                      std::span<const declare::Constraint> tdc,
                      std::span<const declare::Constraint> ldc) {
  std::size_t total = 0, plausible = 0;
  for (const CfResult& r : results) {
    for (const auto& c : r.candidates) {
      ++total;
      const std::span<const ActivityId> acts(c.activities);
      if (declare::weighted_violations(tdc, acts) == 0.0 &&
          declare::weighted_violations(ldc, acts) == 0.0) {
        ++plausible;
      }
    }
  }
  if (total == 0) return 0.0;
  return 100.0 * static_cast<double>(plausible) / static_cast<double>(total);
}

Evaluation evaluate(const EvaluationInput& in) {
  if (!in.reference || !in.clf) throw ArgumentError("evaluate: reference log and classifier required");
  const auto& vocab = in.reference->vocab;
  const ActivityId eos = vocab.eos();
  const std::size_t max_len = in.clf->dims().max_len;
  const std::size_t n_constraints = in.tdc.size() + in.ldc.size();

  Evaluation ev;
  ev.summary.algorithm = in.algorithm;
  ev.summary.log_name = in.log_name;
  ev.summary.success_rate = success_rate(in.results);
  ev.summary.plausible_rate = plausible_rate(in.results, in.tdc, in.ldc);

  double sum_len = 0, sum_ynn = 0, sum_l1 = 0, sum_l2 = 0, sum_emd = 0, sum_l0 = 0,
         sum_dl = 0, sum_lcp = 0;
  std::size_t n_plausible = 0;
  std::vector<double> factual_diversities;

  for (const CfResult& r : in.results) {
    const auto fact_enc = eventlog::one_hot(r.factual.activities, vocab, max_len);
    std::vector<std::vector<ActivityId>> plausible_cfs;

    // per-factual diversity over its plausible candidates
    for (const auto& c : r.candidates) {
      const std::span<const ActivityId> acts(c.activities);
      if (declare::weighted_violations(in.tdc, acts) == 0.0 &&
          declare::weighted_violations(in.ldc, acts) == 0.0) {
        plausible_cfs.push_back(c.activities);
      }
    }
    const double fact_div = diversity(plausible_cfs, eos);
    if (!plausible_cfs.empty() && std::isfinite(fact_div)) {
      factual_diversities.push_back(fact_div);
    }

    for (const auto& c : r.candidates) {
      const std::span<const ActivityId> acts(c.activities);
      double violated = 0.0;
      for (const auto& cons : in.tdc) {
        if (!declare::check(cons, acts)) violated += 1.0;
      }
      for (const auto& cons : in.ldc) {
        if (!declare::check(cons, acts)) violated += 1.0;
      }
      const bool plausible = violated == 0.0;

      PerCandidateRow row;
      row.case_id = r.factual.case_id;
      for (ActivityId a : c.activities) row.candidate.push_back(vocab.name(a));
      row.violations_pct =
          n_constraints == 0 ? 0.0 : 100.0 * violated / static_cast<double>(n_constraints);
      row.plausible = plausible;
      row.cf_len = c.activities.size() - (c.has_eos ? 1 : 0);

      const auto cf_enc = eventlog::one_hot(c.activities, vocab, max_len);
      const Norms nm = norms(fact_enc, cf_enc);
      row.l0 = nm.l0;
      row.l1 = nm.l1;
      row.l2 = nm.l2;
      row.emd = emd(std::span<const ActivityId>(r.factual.activities), acts, eos);
      row.dl_edit = static_cast<double>(
          dl_edit(std::span<const ActivityId>(r.factual.activities), acts));
      row.lcp = static_cast<double>(
          lcp(std::span<const ActivityId>(r.factual.activities), acts));
      row.y_nn = y_nn(acts, *in.reference, *in.clf, in.knn);
      row.diversity = std::isfinite(fact_div) ? fact_div : 0.0;
      ev.per_candidate.push_back(row);

      if (plausible) {
        ++n_plausible;
        sum_len += static_cast<double>(row.cf_len);
        sum_ynn += row.y_nn;
        sum_l1 += row.l1;
        sum_l2 += row.l2;
        sum_emd += row.emd;
        sum_l0 += row.l0;
        sum_dl += row.dl_edit;
        sum_lcp += row.lcp;
      }
    }
  }

  if (n_plausible > 0) {
    const double n = static_cast<double>(n_plausible);
    ev.summary.has_distances = true;
    ev.summary.cf_len = sum_len / n;
    ev.summary.y_nn = sum_ynn / n;
    ev.summary.l1 = sum_l1 / n;
    ev.summary.l2 = sum_l2 / n;
    ev.summary.emd = sum_emd / n;
    ev.summary.l0 = sum_l0 / n;
    ev.summary.dl_edit = sum_dl / n;
    ev.summary.lcp = sum_lcp / n;
    ev.summary.diversity =
        factual_diversities.empty()
            ? 0.0
            : std::accumulate(factual_diversities.begin(), factual_diversities.end(), 0.0) /
                  static_cast<double>(factual_diversities.size());
  }
  return ev;
}

std::vector<MetricRow> with_averages(std::vector<MetricRow> rows) {
  std::vector<std::string> algorithms;
  for (const auto& r : rows) {
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
  }
  std::vector<MetricRow> out;
  for (const auto& alg : algorithms) {
    std::vector<const MetricRow*> mine;
    for (const auto& r : rows) {
      if (r.algorithm == alg) mine.push_back(&r);
    }
    for (const auto* r : mine) out.push_back(*r);
    if (mine.size() < 2) continue;
    MetricRow avg;
    avg.algorithm = alg;
    avg.log_name = "(avg.)";
    const double n = static_cast<double>(mine.size());
    // rows without distances contribute zero, matching the published
    // convention for suppressed columns
    for (const auto* r : mine) {
      avg.success_rate += r->success_rate / n;
      avg.plausible_rate += r->plausible_rate / n;
      avg.cf_len += (r->has_distances ? r->cf_len : 0.0) / n;
      avg.y_nn += (r->has_distances ? r->y_nn : 0.0) / n;
      avg.l1 += (r->has_distances ? r->l1 : 0.0) / n;
      avg.l2 += (r->has_distances ? r->l2 : 0.0) / n;
      avg.emd += (r->has_distances ? r->emd : 0.0) / n;
      avg.l0 += (r->has_distances ? r->l0 : 0.0) / n;
      avg.dl_edit += (r->has_distances ? r->dl_edit : 0.0) / n;
      avg.lcp += (r->has_distances ? r->lcp : 0.0) / n;
      avg.diversity += (r->has_distances ? r->diversity : 0.0) / n;
    }
    avg.has_distances = true;
    out.push_back(std::move(avg));
  }
  return out;
}

namespace {

constexpr const char* kColumns[] = {"Success Rate (%)", "Plausible Rate (%)", "|CF|",
                                    "y-NN",             "L1",                 "L2",
                                    "EMD",              "L0",                 "DL Edit",
                                    "LCP",              "Diversity"};

std::vector<std::string> row_cells(const MetricRow& r) {
  std::vector<std::string> cells;
  cells.push_back(fmt(r.success_rate));
  cells.push_back(fmt(r.plausible_rate));
  const auto d = [&](double v) { return r.has_distances ? fmt(v) : std::string("/"); };
  cells.push_back(d(r.cf_len));
  cells.push_back(d(r.y_nn));
  cells.push_back(d(r.l1));
  cells.push_back(d(r.l2));
  cells.push_back(d(r.emd));
  cells.push_back(d(r.l0));
  cells.push_back(d(r.dl_edit));
  cells.push_back(d(r.lcp));
  cells.push_back(d(r.diversity));
  return cells;
}

}  // namespace

std::string render_report_csv(std::span<const MetricRow> rows) {
  std::string out = "algorithm,log";
  for (const char* c : kColumns) {
    out += ",";
    out += c;
  }
  out += "\n";
  for (const auto& r : rows) {
    out += r.algorithm + "," + r.log_name;
    for (const auto& cell : row_cells(r)) {
      out += "," + cell;
    }
    out += "\n";
  }
  return out;
}

std::string render_report_text(std::span<const MetricRow> rows) {
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header = {"Algorithm", "Event Log"};
  for (const char* c : kColumns) header.push_back(c);
  table.push_back(header);
  for (const auto& r : rows) {
    std::vector<std::string> line = {r.algorithm, r.log_name};
    for (auto& cell : row_cells(r)) line.push_back(cell);
    table.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  for (std::size_t li = 0; li < table.size(); ++li) {
    for (std::size_t i = 0; i < table[li].size(); ++i) {
      if (i) out += "  ";
      out += table[li][i];
      out.append(width[i] - table[li][i].size(), ' ');
    }
    out += "\n";
    if (li == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out.append(total + 2 * (width.size() - 1), '-');
      out += "\n";
    }
  }
  out += "\nDistance columns average over plausible counterfactuals only; '/' marks a\n";
  out += "log without any. '(avg.)' rows are unweighted means over logs with '/'\n";
  out += "treated as zero. Diversity of a single counterfactual is 0 by convention;\n";
  out += "duplicate-only sets are excluded from averages.\n";
  return out;
}

std::string render_per_candidate_csv(std::span<const PerCandidateRow> rows) {
  std::string out =
      "case_id,counterfactual,violations_pct,plausible,cf_len,y_nn,l1,l2,emd,l0,dl_edit,"
      "lcp,diversity\n";
  for (const auto& r : rows) {
    std::string seq;
    for (std::size_t i = 0; i < r.candidate.size(); ++i) {
      if (i) seq += " ";
      seq += r.candidate[i];
    }
    out += r.case_id + ",\"" + seq + "\"," + fmt(r.violations_pct) + "," +
           (r.plausible ? "1" : "0") + "," + std::to_string(r.cf_len) + "," + fmt(r.y_nn) +
           "," + fmt(r.l1) + "," + fmt(r.l2) + "," + fmt(r.emd) + "," + fmt(r.l0) + "," +
           fmt(r.dl_edit) + "," + fmt(r.lcp) + "," + fmt(r.diversity) + "\n";
  }
  return out;
}

}  // namespace revised::metrics
