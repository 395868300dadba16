#include "revised/declare/mine.hpp"

#include <algorithm>
#include <set>

#include "revised/errors.hpp"
#include "revised/parallel.hpp"

namespace revised::declare {

namespace {

std::vector<ActivityId> activities_in(std::span<const Trace> traces) {
  std::set<ActivityId> acts;
  for (const Trace& t : traces) acts.insert(t.activities.begin(), t.activities.end());
  return {acts.begin(), acts.end()};
}

std::vector<Constraint> candidates(const std::vector<ActivityId>& acts, int max_card) {
  std::vector<Constraint> out;
  for (int k = 0; k < kNumTemplateKinds; ++k) {
    const auto kind = static_cast<TemplateKind>(k);
    if (!is_binary(kind)) {
      for (ActivityId a : acts) {
        if (has_cardinality(kind)) {
          for (int n = 1; n <= max_card; ++n) out.push_back(Constraint::unary(kind, a, n));
        } else {
          out.push_back(Constraint::unary(kind, a));
        }
      }
    } else {
      for (ActivityId a : acts) {
        for (ActivityId b : acts) {
          if (a != b) out.push_back(Constraint::binary(kind, a, b));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Constraint> mine(std::span<const Trace> traces, double support, int max_card,
                             std::size_t workers) {
  if (traces.empty()) throw ArgumentError("mine over an empty trace set");
  if (!(support > 0.0 && support <= 1.0)) throw ArgumentError("support must be in (0,1]");
  if (max_card < 1) throw ArgumentError("max_card must be >= 1");

  const std::vector<Constraint> cands = candidates(activities_in(traces), max_card);
  const double n = static_cast<double>(traces.size());

  std::vector<char> keep(cands.size(), 0);
  parallel_for(cands.size(), workers, [&](std::size_t i) {
    std::size_t satisfied = 0;
    for (const Trace& t : traces) {
      if (check(cands[i], t)) ++satisfied;
    }
    keep[i] = static_cast<double>(satisfied) / n >= support - 1e-12;
  });

  std::vector<Constraint> mined;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (keep[i]) mined.push_back(cands[i]);
  }
  std::sort(mined.begin(), mined.end());
  return mined;
}

ConstraintSet derive_tdc_ldc(std::span<const Trace> all_traces,
                             std::span<const Trace> desired_label_traces,
                             double support, int max_card, std::size_t workers) {
  if (desired_label_traces.empty()) {
    throw ArgumentError("no traces with the desired label");
  }
  ConstraintSet cs;
  cs.tdc = mine(all_traces, support, max_card, workers);
  std::vector<Constraint> desired = mine(desired_label_traces, support, max_card, workers);
  std::set_difference(desired.begin(), desired.end(), cs.tdc.begin(), cs.tdc.end(),
                      std::back_inserter(cs.ldc));
  return cs;
}

}  // namespace revised::declare
