#pragma once

#include "revised/eventlog/types.hpp"

namespace revised::eventlog {

struct TruncateResult {
  EventLog log;
  std::size_t dropped_traces = 0;  // traces emptied by the cut
};

// Cuts every trace strictly before its first occurrence of the outcome
// activity; traces that become empty are dropped (and counted).
TruncateResult truncate_outcome_activity(const EventLog& log, ActivityId outcome_activity);

struct QuantileCutResult {
  EventLog log;
  std::size_t truncated_traces = 0;
};

// Sets max_len to the smallest length L such that at least ceil(q*N) traces
// have length <= L, then truncates longer traces to their first L events.
QuantileCutResult cut_at_quantile(const EventLog& log, double q);

// Appends the EoS token to every trace; max_len grows by one. The EoS event
// inherits the trace's final timestamp. State error if EoS already present.
EventLog append_eos(const EventLog& log);

struct SplitResult {
  EventLog train;
  EventLog test;
  Timestamp split_instant = 0;        // earliest first-event time in test
  std::size_t cut_train_events = 0;   // train events removed by overlap cutting
  std::size_t dropped_train_traces = 0;
};

// Temporal split: cases ordered by first-event timestamp (case id breaks
// ties), earliest ceil(train_fraction*N) cases go to train. Train events at
// or after the split instant are removed; emptied train cases are dropped.
SplitResult temporal_split(const EventLog& log, double train_fraction);

// All prefixes of every trace, labels inherited.
EventLog prefix_log(const EventLog& log);

}  // namespace revised::eventlog
