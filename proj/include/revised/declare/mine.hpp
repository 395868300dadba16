#pragma once

#include <span>

#include "revised/declare/check.hpp"

namespace revised::declare {

// Enumerates every template kind over the activities occurring in the given
// traces (cardinalities 1..max_card for the counting kinds, ordered pairs of
// distinct activities for the binary kinds) and returns the candidates whose
// support — the fraction of traces satisfying them — is at least `support`.
// Output is sorted by (kind, a, b, n). Candidates are checked in parallel
// across `workers` threads (0 = all cores) and merged in candidate order, so
// the result does not depend on the worker count.
std::vector<Constraint> mine(std::span<const Trace> traces, double support, int max_card,
                             std::size_t workers = 1);

// tdc = mine(all); ldc = mine(desired) \ tdc.
ConstraintSet derive_tdc_ldc(std::span<const Trace> all_traces,
                             std::span<const Trace> desired_label_traces,
                             double support = 1.0, int max_card = 3,
                             std::size_t workers = 1);

}  // namespace revised::declare
