#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "revised/errors.hpp"
#include "revised/hash.hpp"
#include "revised/mat.hpp"

namespace revised::eventlog {

using ActivityId = int;
using Timestamp = std::int64_t;  // epoch milliseconds

struct Event {
  std::string case_id;
  ActivityId activity = 0;
  Timestamp timestamp = 0;
};

// One case: a time-ordered activity sequence with a binary outcome label.
// Immutable after construction by convention; all preprocessing returns
// fresh copies.
struct Trace {
  std::string case_id;
  std::vector<ActivityId> activities;
  std::vector<Timestamp> timestamps;
  int label = 0;

  std::size_t length() const { return activities.size(); }

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.case_id == b.case_id && a.activities == b.activities &&
           a.timestamps == b.timestamps && a.label == b.label;
  }
};

// Bijection between activity names and dense ids. Ids follow lexicographic
// name order; the artificial end-of-sequence token always takes the highest
// id and never appears in raw input.
class Vocabulary {
public:
  static constexpr const char* kEosName = "EoS";

  Vocabulary() = default;

  // names: distinct raw activity names, any order; EoS is appended here.
  static Vocabulary from_names(std::vector<std::string> names);

  ActivityId id(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) throw ArgumentError("unknown activity: " + name);
    return it->second;
  }
  const std::string& name(ActivityId a) const {
    if (a < 0 || static_cast<std::size_t>(a) >= names_.size())
      throw ArgumentError("activity id out of range: " + std::to_string(a));
    return names_[static_cast<std::size_t>(a)];
  }
  bool contains(const std::string& name) const { return ids_.count(name) > 0; }
  bool valid(ActivityId a) const {
    return a >= 0 && static_cast<std::size_t>(a) < names_.size();
  }

  ActivityId eos() const { return static_cast<ActivityId>(names_.size()) - 1; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  std::uint64_t hash() const { return fnv1a64(names_); }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.names_ == b.names_;
  }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ActivityId> ids_;
};

struct EventLog {
  Vocabulary vocab;
  std::vector<Trace> traces;
  std::size_t max_len = 0;  // upper bound on trace length after cutting

  std::size_t num_traces() const { return traces.size(); }
};

// Padded one-hot (or soft probability) view of a trace: max_len rows over
// the vocabulary. Rows past the first EoS are all-zero for hard encodings;
// effective_len counts rows up to and including that EoS. Soft matrices
// coming out of the decoder have no hard EoS and use effective_len == rows.
struct EncodedTrace {
  Mat m;
  std::size_t effective_len = 0;
  bool has_eos = false;
};

// Result of hard-decoding a probability matrix.
struct DecodedTrace {
  std::vector<ActivityId> activities;  // truncated at and including first EoS
  bool has_eos = false;
};

}  // namespace revised::eventlog
