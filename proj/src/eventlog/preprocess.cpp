#include "revised/eventlog/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace revised::eventlog {

TruncateResult truncate_outcome_activity(const EventLog& log, ActivityId outcome_activity) {
  if (!log.vocab.valid(outcome_activity)) {
    throw ArgumentError("outcome activity id out of range: " +
                        std::to_string(outcome_activity));
  }
  TruncateResult res;
  res.log.vocab = log.vocab;
  std::size_t max_len = 0;
  for (const Trace& t : log.traces) {
    auto it = std::find(t.activities.begin(), t.activities.end(), outcome_activity);
    const std::size_t keep = static_cast<std::size_t>(it - t.activities.begin());
    if (keep == 0) {
      if (it != t.activities.end()) {
        ++res.dropped_traces;  // outcome activity was the first event
        continue;
      }
      // empty trace: keep as-is (cannot occur for parsed logs)
    }
    Trace cut = t;
    cut.activities.resize(keep);
    cut.timestamps.resize(keep);
    max_len = std::max(max_len, cut.length());
    res.log.traces.push_back(std::move(cut));
  }
  res.log.max_len = max_len;
  return res;
}

QuantileCutResult cut_at_quantile(const EventLog& log, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw ArgumentError("quantile must be in (0,1]");
  if (log.traces.empty()) throw StateError("cut_at_quantile on empty log");

  std::vector<std::size_t> lengths;
  lengths.reserve(log.traces.size());
  for (const Trace& t : log.traces) lengths.push_back(t.length());
  std::sort(lengths.begin(), lengths.end());

  const std::size_t n = lengths.size();
  // ceil(q*N), nudged so representation error in q*N cannot bump the rank.
  std::size_t need =
      static_cast<std::size_t>(std::ceil(q * static_cast<double>(n) - 1e-9));
  need = std::min(std::max<std::size_t>(need, 1), n);
  // need-th smallest length (1-based) is the smallest L with
  // |{len <= L}| >= need; ties are included automatically.
  const std::size_t max_len = lengths[need - 1];

  QuantileCutResult res;
  res.log.vocab = log.vocab;
  res.log.max_len = max_len;
  res.log.traces.reserve(log.traces.size());
  for (const Trace& t : log.traces) {
    Trace cut = t;
    if (cut.length() > max_len) {
      cut.activities.resize(max_len);
      cut.timestamps.resize(max_len);
      ++res.truncated_traces;
    }
    res.log.traces.push_back(std::move(cut));
  }
  return res;
}

EventLog append_eos(const EventLog& log) {
  const ActivityId eos = log.vocab.eos();
  for (const Trace& t : log.traces) {
    if (std::find(t.activities.begin(), t.activities.end(), eos) != t.activities.end()) {
      throw StateError("EoS already present in trace '" + t.case_id + "'");
    }
  }
  EventLog out;
  out.vocab = log.vocab;
  out.max_len = log.max_len + 1;
  out.traces.reserve(log.traces.size());
  for (const Trace& t : log.traces) {
    Trace e = t;
    e.activities.push_back(eos);
    e.timestamps.push_back(t.timestamps.empty() ? 0 : t.timestamps.back());
    out.traces.push_back(std::move(e));
  }
  return out;
}

SplitResult temporal_split(const EventLog& log, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ArgumentError("train fraction must be in (0,1)");
  }
  if (log.traces.size() < 2) throw StateError("temporal split needs at least 2 cases");

  std::vector<std::size_t> order(log.traces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Trace& ta = log.traces[a];
    const Trace& tb = log.traces[b];
    Timestamp sa = ta.timestamps.empty() ? 0 : ta.timestamps.front();
    Timestamp sb = tb.timestamps.empty() ? 0 : tb.timestamps.front();
    if (sa != sb) return sa < sb;
    return ta.case_id < tb.case_id;
  });

  const std::size_t n = order.size();
  std::size_t n_train = static_cast<std::size_t>(
      std::ceil(train_fraction * static_cast<double>(n) - 1e-9));
  n_train = std::min(std::max<std::size_t>(n_train, 1), n - 1);

  SplitResult res;
  res.train.vocab = log.vocab;
  res.test.vocab = log.vocab;
  res.train.max_len = log.max_len;
  res.test.max_len = log.max_len;

  const Trace& first_test = log.traces[order[n_train]];
  res.split_instant = first_test.timestamps.empty() ? 0 : first_test.timestamps.front();

  for (std::size_t i = 0; i < n; ++i) {
    const Trace& t = log.traces[order[i]];
    if (i >= n_train) {
      res.test.traces.push_back(t);
      continue;
    }
    Trace kept;
    kept.case_id = t.case_id;
    kept.label = t.label;
    for (std::size_t j = 0; j < t.length(); ++j) {
      if (t.timestamps[j] < res.split_instant) {
        kept.activities.push_back(t.activities[j]);
        kept.timestamps.push_back(t.timestamps[j]);
      } else {
        ++res.cut_train_events;
      }
    }
    if (kept.activities.empty()) {
      ++res.dropped_train_traces;
    } else {
      res.train.traces.push_back(std::move(kept));
    }
  }
  return res;
}

EventLog prefix_log(const EventLog& log) {
  EventLog out;
  out.vocab = log.vocab;
  out.max_len = log.max_len;
  for (const Trace& t : log.traces) {
    for (std::size_t l = 1; l <= t.length(); ++l) {
      Trace p;
      p.case_id = t.case_id;
      p.label = t.label;
      p.activities.assign(t.activities.begin(), t.activities.begin() + static_cast<long>(l));
      p.timestamps.assign(t.timestamps.begin(), t.timestamps.begin() + static_cast<long>(l));
      out.traces.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace revised::eventlog
