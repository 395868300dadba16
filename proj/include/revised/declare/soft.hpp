#pragma once

#include <span>

#include "revised/declare/constraint.hpp"
#include "revised/mat.hpp"

namespace revised::declare {

// Differentiable relaxation of a constraint over a probability matrix
// (rows 0..effective_len-1 on the simplex). Scores are hinge-style: >= 0,
// and exactly 0 on a hard one-hot matrix iff check() passes on the decoded
// trace. Only the unary, unordered and simple-ordered kinds have a soft
// form; the alternate/chain kinds are hard-checked only.
bool is_soft_supported(TemplateKind k);

double soft_violation(const Constraint& c, const Mat& p, std::size_t effective_len);

// As above, also accumulating weight * d(score)/dp into *grad (same shape
// as p) when grad is non-null. Returns the unweighted score.
double soft_violation_grad(const Constraint& c, const Mat& p, std::size_t effective_len,
                           double weight, Mat* grad);

struct SoftTotal {
  double value = 0.0;        // sum_j w_j * score_j over supported kinds
  std::size_t skipped = 0;   // constraints without a soft form
};

SoftTotal soft_violation_total(std::span<const Constraint> cs, const Mat& p,
                               std::size_t effective_len);
SoftTotal soft_violation_total_grad(std::span<const Constraint> cs, const Mat& p,
                                    std::size_t effective_len, Mat* grad);

}  // namespace revised::declare
