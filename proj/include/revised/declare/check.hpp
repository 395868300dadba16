#pragma once

#include <span>

#include "revised/declare/constraint.hpp"

namespace revised::declare {

using eventlog::Trace;

// True iff the activity sequence satisfies the constraint's LTL-f formula
// under finite-trace semantics with strong next. Vacuous satisfaction
// follows the formulas (Response(a,b) holds when a never occurs, ...).
bool check(const Constraint& c, std::span<const ActivityId> activities);
bool check(const Constraint& c, const Trace& t);

// Number of violated constraints in cs for one sequence, weighted.
double weighted_violations(std::span<const Constraint> cs,
                           std::span<const ActivityId> activities);

// Mean weighted violation count per trace: (1/N) * sum_t sum_j w_j * phi.
double violation_score(std::span<const Constraint> cs, std::span<const Trace> traces);

}  // namespace revised::declare
