#include "revised/declare/soft.hpp"

#include <algorithm>
#include <cmath>

#include "revised/errors.hpp"

namespace revised::declare {

namespace {

// loose enough that finite-difference probing of single entries (steps up
// to ~1e-4) stays admissible; real misuse is orders of magnitude off
constexpr double kSimplexTol = 1e-3;

void validate(const Mat& p, std::size_t len) {
  if (len == 0 || len > p.rows) {
    throw ArgumentError("soft_violation: effective length out of range");
  }
  for (std::size_t i = 0; i < len; ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < p.cols; ++c) {
      const double v = p(i, c);
      if (v < -kSimplexTol || !std::isfinite(v)) {
        throw NumericError("soft_violation: negative or non-finite probability");
      }
      s += v;
    }
    if (std::fabs(s - 1.0) > kSimplexTol) {
      throw NumericError("soft_violation: row " + std::to_string(i) +
                         " sums to " + std::to_string(s));
    }
  }
}

std::size_t col(const Mat& p, ActivityId a) {
  if (a < 0 || static_cast<std::size_t>(a) >= p.cols) {
    throw ArgumentError("soft_violation: activity id outside matrix width");
  }
  return static_cast<std::size_t>(a);
}

double col_sum(const Mat& p, std::size_t a, std::size_t len) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s += p(i, a);
  return s;
}

// Core scorer. grad may be null; when set, weight * d(score)/dp is
// accumulated. Hinge activity uses strict positivity so score and gradient
// always agree on which side of the kink they are on.
double score(const Constraint& c, const Mat& p, std::size_t len, double w, Mat* g) {
  const std::size_t a = col(p, c.a);
  switch (c.kind) {
    case TemplateKind::kExistence: {
      const double miss = static_cast<double>(c.n) - col_sum(p, a, len);
      if (miss > 0.0 && g) {
        for (std::size_t i = 0; i < len; ++i) (*g)(i, a) -= w;
      }
      return std::max(0.0, miss);
    }
    case TemplateKind::kAbsence: {
      const double excess = col_sum(p, a, len) - static_cast<double>(c.n - 1);
      if (excess > 0.0 && g) {
        for (std::size_t i = 0; i < len; ++i) (*g)(i, a) += w;
      }
      return std::max(0.0, excess);
    }
    case TemplateKind::kExactly: {
      const double s = col_sum(p, a, len);
      const double below = static_cast<double>(c.n) - s;
      const double above = s - static_cast<double>(c.n);
      if (g && below > 0.0) {
        for (std::size_t i = 0; i < len; ++i) (*g)(i, a) -= w;
      }
      if (g && above > 0.0) {
        for (std::size_t i = 0; i < len; ++i) (*g)(i, a) += w;
      }
      return std::max(0.0, below) + std::max(0.0, above);
    }
    case TemplateKind::kInit: {
      if (g) (*g)(0, a) -= w;
      return 1.0 - p(0, a);
    }
    case TemplateKind::kLast: {
      double v = 0.0;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        v += p(i, a) * (1.0 - p(i + 1, a));
        if (g) {
          (*g)(i, a) += w * (1.0 - p(i + 1, a));
          (*g)(i + 1, a) -= w * p(i, a);
        }
      }
      return v;
    }
    case TemplateKind::kCoExistence: {
      const std::size_t b = col(p, c.b);
      const double sa = col_sum(p, a, len);
      const double sb = col_sum(p, b, len);
      const double oa = std::min(1.0, sa);
      const double ob = std::min(1.0, sb);
      if (g) {
        if (sa < 1.0) {
          const double da = w * (1.0 - 2.0 * ob);
          for (std::size_t i = 0; i < len; ++i) (*g)(i, a) += da;
        }
        if (sb < 1.0) {
          const double db = w * (1.0 - 2.0 * oa);
          for (std::size_t i = 0; i < len; ++i) (*g)(i, b) += db;
        }
      }
      return oa + ob - 2.0 * oa * ob;
    }
    case TemplateKind::kResponse: {
      const std::size_t b = col(p, c.b);
      // suffix[i] = sum_{j>i} p(j,b)
      std::vector<double> suffix(len, 0.0);
      for (std::size_t i = len - 1; i-- > 0;) suffix[i] = suffix[i + 1] + p(i + 1, b);
      double v = 0.0;
      double acc = 0.0;  // sum over active i<j of w*p(i,a)
      for (std::size_t i = 0; i < len; ++i) {
        if (g) (*g)(i, b) -= acc;
        const double h = 1.0 - suffix[i];
        if (h > 0.0) {
          v += p(i, a) * h;
          if (g) (*g)(i, a) += w * h;
          acc += w * p(i, a);
        }
      }
      return v;
    }
    case TemplateKind::kPrecedence: {
      const std::size_t b = col(p, c.b);
      double v = 0.0;
      double prefix = 0.0;  // sum_{i<j} p(i,a)
      std::vector<double> active_b(len, 0.0);
      for (std::size_t j = 0; j < len; ++j) {
        const double h = 1.0 - prefix;
        if (h > 0.0) {
          v += p(j, b) * h;
          if (g) (*g)(j, b) += w * h;
          active_b[j] = p(j, b);
        }
        prefix += p(j, a);
      }
      if (g) {
        double acc = 0.0;  // sum over active j'>i of w*p(j',b)
        for (std::size_t i = len; i-- > 0;) {
          (*g)(i, a) -= acc;
          acc += w * active_b[i];
        }
      }
      return v;
    }
    case TemplateKind::kSuccession: {
      Constraint part = c;
      part.kind = TemplateKind::kResponse;
      const double r = score(part, p, len, w, g);
      part.kind = TemplateKind::kPrecedence;
      return r + score(part, p, len, w, g);
    }
    case TemplateKind::kNotSuccession: {
      const std::size_t b = col(p, c.b);
      std::vector<double> suffix(len, 0.0);
      for (std::size_t i = len - 1; i-- > 0;) suffix[i] = suffix[i + 1] + p(i + 1, b);
      double v = 0.0;
      double prefix = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        v += p(i, a) * suffix[i];
        if (g) {
          (*g)(i, a) += w * suffix[i];
          (*g)(i, b) += w * prefix;
        }
        prefix += p(i, a);
      }
      return v;
    }
    default:
      throw CapabilityError(std::string("no soft relaxation for template kind ") +
                            kind_name(c.kind));
  }
}

}  // namespace

bool is_soft_supported(TemplateKind k) {
  return k <= TemplateKind::kNotSuccession;
}

double soft_violation(const Constraint& c, const Mat& p, std::size_t effective_len) {
  validate(p, effective_len);
  return score(c, p, effective_len, 1.0, nullptr);
}

double soft_violation_grad(const Constraint& c, const Mat& p, std::size_t effective_len,
                           double weight, Mat* grad) {
  validate(p, effective_len);
  if (grad && !grad->same_shape(p)) {
    throw ArgumentError("soft_violation_grad: gradient shape mismatch");
  }
  return score(c, p, effective_len, weight, grad);
}

SoftTotal soft_violation_total(std::span<const Constraint> cs, const Mat& p,
                               std::size_t effective_len) {
  return soft_violation_total_grad(cs, p, effective_len, nullptr);
}

SoftTotal soft_violation_total_grad(std::span<const Constraint> cs, const Mat& p,
                                    std::size_t effective_len, Mat* grad) {
  if (!cs.empty()) validate(p, effective_len);
  if (grad && !grad->same_shape(p)) {
    throw ArgumentError("soft_violation_total_grad: gradient shape mismatch");
  }
  SoftTotal total;
  for (const Constraint& c : cs) {
    if (!is_soft_supported(c.kind)) {
      ++total.skipped;
      continue;
    }
    total.value += c.weight * score(c, p, effective_len, c.weight, grad);
  }
  return total;
}

}  // namespace revised::declare
