#include "revised/eventlog/encode.hpp"

#include <algorithm>

namespace revised::eventlog {

EncodedTrace one_hot(const std::vector<ActivityId>& activities, const Vocabulary& vocab,
                     std::size_t max_len) {
  if (activities.size() > max_len) {
    throw ArgumentError("trace length " + std::to_string(activities.size()) +
                        " exceeds max_len " + std::to_string(max_len));
  }
  EncodedTrace enc;
  enc.m = Mat(max_len, vocab.size());
  const ActivityId eos = vocab.eos();
  std::size_t len = 0;
  for (ActivityId a : activities) {
    if (!vocab.valid(a)) throw ArgumentError("activity id out of range");
    enc.m(len, static_cast<std::size_t>(a)) = 1.0;
    ++len;
    if (a == eos) {
      enc.has_eos = true;
      break;
    }
  }
  enc.effective_len = len;
  return enc;
}

EncodedTrace encode_trace(const Trace& trace, const Vocabulary& vocab, std::size_t max_len) {
  const ActivityId eos = vocab.eos();
  const std::size_t eos_count = static_cast<std::size_t>(
      std::count(trace.activities.begin(), trace.activities.end(), eos));
  if (eos_count != 1) {
    throw ArgumentError("trace '" + trace.case_id + "' must contain EoS exactly once, has " +
                        std::to_string(eos_count));
  }
  return one_hot(trace.activities, vocab, max_len);
}

DecodedTrace decode_matrix(const Mat& matrix, const Vocabulary& vocab) {
  if (matrix.cols == 0) throw ArgumentError("decode_matrix: zero-width matrix");
  if (matrix.cols != vocab.size()) {
    throw ArgumentError("decode_matrix: matrix width " + std::to_string(matrix.cols) +
                        " does not match vocabulary size " + std::to_string(vocab.size()));
  }
  DecodedTrace out;
  const ActivityId eos = vocab.eos();
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    const double* row = matrix.row(r);
    std::size_t best = 0;
    for (std::size_t c = 1; c < matrix.cols; ++c) {
      if (row[c] > row[best]) best = c;  // strict: ties keep the lowest id
    }
    out.activities.push_back(static_cast<ActivityId>(best));
    if (static_cast<ActivityId>(best) == eos) {
      out.has_eos = true;
      break;
    }
  }
  return out;
}

}  // namespace revised::eventlog
