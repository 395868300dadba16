#pragma once

#include <span>

#include "revised/eventlog/types.hpp"

namespace revised::metrics {

using eventlog::ActivityId;
using eventlog::EncodedTrace;
using eventlog::Trace;

struct Norms {
  double l0 = 0.0;  // nonzero entries of delta
  double l1 = 0.0;
  double l2 = 0.0;  // Euclidean norm
};

// All three computed on delta = factual - cf over the whole padded grid.
Norms norms(const EncodedTrace& factual, const EncodedTrace& cf);

// Earth mover distance between normalized activity-frequency histograms
// with unit ground distance between distinct activities, which reduces to
// the total variation distance 0.5*|h_a - h_b|_1. EoS is excluded from the
// histograms; a pair with exactly one empty histogram is at distance 1.
double emd(std::span<const ActivityId> a, std::span<const ActivityId> b, ActivityId eos);
double emd(const Trace& a, const Trace& b, ActivityId eos);

// Damerau-Levenshtein distance, optimal-string-alignment variant (insert,
// delete, substitute, adjacent transposition; no substring edited twice).
std::size_t dl_edit(std::span<const ActivityId> a, std::span<const ActivityId> b);

// Length of the longest common prefix.
std::size_t lcp(std::span<const ActivityId> a, std::span<const ActivityId> b);

}  // namespace revised::metrics
