#include "revised/declare/check.hpp"

#include <algorithm>

#include "revised/errors.hpp"

namespace revised::declare {

namespace {

using Seq = std::span<const ActivityId>;

std::ptrdiff_t count_of(Seq t, ActivityId a) {
  return std::count(t.begin(), t.end(), a);
}

bool occurs(Seq t, ActivityId a) {
  return std::find(t.begin(), t.end(), a) != t.end();
}

// every a is eventually followed by a b
bool response(Seq t, ActivityId a, ActivityId b) {
  bool b_seen = false;
  for (std::size_t i = t.size(); i-- > 0;) {
    if (t[i] == b) b_seen = true;
    if (t[i] == a && !b_seen) return false;
  }
  return true;
}

// (not b until a) or globally not b: some a strictly before the first b
bool precedence(Seq t, ActivityId a, ActivityId b) {
  for (ActivityId x : t) {
    if (x == a) return true;
    if (x == b) return false;
  }
  return true;  // b never occurs
}

// after every a, no b may follow
bool not_succession(Seq t, ActivityId a, ActivityId b) {
  bool a_seen = false;
  for (ActivityId x : t) {
    if (x == b && a_seen) return false;
    if (x == a) a_seen = true;
  }
  return true;
}

// every a is followed by a b with no intervening a (strong next: an a at the
// final position has no successor and violates)
bool alternate_response(Seq t, ActivityId a, ActivityId b) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != a) continue;
    bool answered = false;
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[j] == b) {
        answered = true;
        break;
      }
      if (t[j] == a) break;
    }
    if (!answered) return false;
  }
  return true;
}

// precedence(a,b) must hold, and again after every b (strong next: a b at
// the final position violates the nested next)
bool alternate_precedence(Seq t, ActivityId a, ActivityId b) {
  if (!precedence(t, a, b)) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != b) continue;
    if (i + 1 >= t.size()) return false;  // strong next on the suffix
    if (!precedence(t.subspan(i + 1), a, b)) return false;
  }
  return true;
}

bool chain_response(Seq t, ActivityId a, ActivityId b) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == a && (i + 1 >= t.size() || t[i + 1] != b)) return false;
  }
  return true;
}

bool chain_precedence(Seq t, ActivityId a, ActivityId b) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i + 1] == b && t[i] != a) return false;
  }
  return true;
}

bool chain_succession(Seq t, ActivityId a, ActivityId b) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const bool next_is_b = i + 1 < t.size() && t[i + 1] == b;
    if ((t[i] == a) != next_is_b) return false;
  }
  return true;
}

// every occurrence of a at a non-final position must be followed by a
bool last(Seq t, ActivityId a) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] == a && t[i + 1] != a) return false;
  }
  return true;
}

}  // namespace

bool check(const Constraint& c, Seq t) {
  switch (c.kind) {
    case TemplateKind::kExistence:
      return count_of(t, c.a) >= c.n;
    case TemplateKind::kAbsence:
      return count_of(t, c.a) < c.n;
    case TemplateKind::kExactly:
      return count_of(t, c.a) == c.n;
    case TemplateKind::kInit:
      return !t.empty() && t.front() == c.a;
    case TemplateKind::kLast:
      return last(t, c.a);
    case TemplateKind::kCoExistence:
      return occurs(t, c.a) == occurs(t, c.b);
    case TemplateKind::kResponse:
      return response(t, c.a, c.b);
    case TemplateKind::kPrecedence:
      return precedence(t, c.a, c.b);
    case TemplateKind::kSuccession:
      return response(t, c.a, c.b) && precedence(t, c.a, c.b);
    case TemplateKind::kNotSuccession:
      return not_succession(t, c.a, c.b);
    case TemplateKind::kAlternateResponse:
      return alternate_response(t, c.a, c.b);
    case TemplateKind::kAlternatePrecedence:
      return alternate_precedence(t, c.a, c.b);
    case TemplateKind::kAlternateSuccession:
      return alternate_response(t, c.a, c.b) && precedence(t, c.a, c.b);
    case TemplateKind::kChainResponse:
      return chain_response(t, c.a, c.b);
    case TemplateKind::kChainPrecedence:
      return chain_precedence(t, c.a, c.b);
    case TemplateKind::kChainSuccession:
      return chain_succession(t, c.a, c.b);
  }
  throw ArgumentError("unknown template kind");
}

bool check(const Constraint& c, const Trace& t) {
  return check(c, std::span<const ActivityId>(t.activities));
}

double weighted_violations(std::span<const Constraint> cs, Seq activities) {
  double v = 0.0;
  for (const Constraint& c : cs) {
    if (!check(c, activities)) v += c.weight;
  }
  return v;
}

double violation_score(std::span<const Constraint> cs, std::span<const Trace> traces) {
  if (traces.empty()) throw ArgumentError("violation_score over an empty trace set");
  double total = 0.0;
  for (const Trace& t : traces) {
    total += weighted_violations(cs, std::span<const ActivityId>(t.activities));
  }
  return total / static_cast<double>(traces.size());
}

}  // namespace revised::declare
