#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "revised/eventlog/types.hpp"

namespace revised::declare {

using eventlog::ActivityId;
using eventlog::Vocabulary;

// Template kinds in the canonical (table) order; this order is also the
// primary sort key for mined output.
enum class TemplateKind : int {
  kExistence = 0,
  kAbsence,
  kExactly,
  kInit,
  kLast,
  kCoExistence,
  kResponse,
  kPrecedence,
  kSuccession,
  kNotSuccession,
  kAlternateResponse,
  kAlternatePrecedence,
  kAlternateSuccession,
  kChainResponse,
  kChainPrecedence,
  kChainSuccession,
};

inline constexpr int kNumTemplateKinds = 16;

bool is_binary(TemplateKind k);
// Kinds carrying a cardinality parameter n.
bool has_cardinality(TemplateKind k);
const char* kind_name(TemplateKind k);
std::optional<TemplateKind> kind_from_name(const std::string& name);

// One Declare template instance over one or two activities.
struct Constraint {
  TemplateKind kind = TemplateKind::kExistence;
  ActivityId a = 0;
  ActivityId b = -1;  // binary kinds only
  int n = 1;          // cardinality kinds only
  double weight = 1.0;

  static Constraint unary(TemplateKind k, ActivityId a, int n = 1, double w = 1.0);
  static Constraint binary(TemplateKind k, ActivityId a, ActivityId b, double w = 1.0);

  std::tuple<int, ActivityId, ActivityId, int> key() const {
    return {static_cast<int>(kind), a, b, n};
  }
  friend bool operator==(const Constraint& x, const Constraint& y) {
    return x.key() == y.key();  // weight is metadata, not identity
  }
  friend bool operator<(const Constraint& x, const Constraint& y) {
    return x.key() < y.key();
  }
};

std::string to_string(const Constraint& c, const Vocabulary& vocab);

// Mined constraints split into trace-level (hold on every trace) and
// label-specific (hold on every desired-label trace, minus the former).
struct ConstraintSet {
  std::vector<Constraint> tdc;
  std::vector<Constraint> ldc;

  std::vector<Constraint> all() const;
};

// Line format: KIND(arg[,arg])[;n=N];weight=W;set=TDC|LDC
// Activity names are written verbatim, so they must not contain the
// delimiters , ( ) ; — enforced at serialization time.
std::string serialize_constraints(const ConstraintSet& cs, const Vocabulary& vocab);
ConstraintSet parse_constraints(const std::string& text, const Vocabulary& vocab);

void save_constraints(const ConstraintSet& cs, const Vocabulary& vocab,
                      const std::string& path);
ConstraintSet load_constraints(const std::string& path, const Vocabulary& vocab);

}  // namespace revised::declare
