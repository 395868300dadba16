#include "revised/declare/constraint.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "revised/errors.hpp"

namespace revised::declare {

namespace {

constexpr std::array<const char*, kNumTemplateKinds> kKindNames = {
    "EXISTENCE",          "ABSENCE",         "EXACTLY",
    "INIT",               "LAST",            "COEXISTENCE",
    "RESPONSE",           "PRECEDENCE",      "SUCCESSION",
    "NOTSUCCESSION",      "ALTERNATERESPONSE", "ALTERNATEPRECEDENCE",
    "ALTERNATESUCCESSION", "CHAINRESPONSE",  "CHAINPRECEDENCE",
    "CHAINSUCCESSION",
};

std::string format_weight(double w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

void check_name_writable(const std::string& name) {
  if (name.find_first_of(",();") != std::string::npos) {
    throw DataError("activity name '" + name + "' contains a delimiter (, ( ) ;)");
  }
}

}  // namespace

bool is_binary(TemplateKind k) { return k >= TemplateKind::kCoExistence; }

bool has_cardinality(TemplateKind k) {
  return k == TemplateKind::kExistence || k == TemplateKind::kAbsence ||
         k == TemplateKind::kExactly;
}

const char* kind_name(TemplateKind k) {
  return kKindNames[static_cast<std::size_t>(k)];
}

std::optional<TemplateKind> kind_from_name(const std::string& name) {
  for (int i = 0; i < kNumTemplateKinds; ++i) {
    if (name == kKindNames[static_cast<std::size_t>(i)]) {
      return static_cast<TemplateKind>(i);
    }
  }
  return std::nullopt;
}

Constraint Constraint::unary(TemplateKind k, ActivityId a, int n, double w) {
  if (is_binary(k)) throw ArgumentError("unary() called with a binary template kind");
  if (has_cardinality(k) && n < 1) throw ArgumentError("cardinality must be >= 1");
  Constraint c;
  c.kind = k;
  c.a = a;
  c.n = has_cardinality(k) ? n : 1;
  c.weight = w;
  return c;
}

Constraint Constraint::binary(TemplateKind k, ActivityId a, ActivityId b, double w) {
  if (!is_binary(k)) throw ArgumentError("binary() called with a unary template kind");
  if (a == b) throw ArgumentError("binary constraints need two distinct activities");
  Constraint c;
  c.kind = k;
  c.a = a;
  c.b = b;
  c.weight = w;
  return c;
}

std::string to_string(const Constraint& c, const Vocabulary& vocab) {
  std::string s = kind_name(c.kind);
  s += "(";
  s += vocab.name(c.a);
  if (is_binary(c.kind)) {
    s += ",";
    s += vocab.name(c.b);
  }
  s += ")";
  if (has_cardinality(c.kind)) s += ";n=" + std::to_string(c.n);
  return s;
}

std::vector<Constraint> ConstraintSet::all() const {
  std::vector<Constraint> out = tdc;
  out.insert(out.end(), ldc.begin(), ldc.end());
  return out;
}

std::string serialize_constraints(const ConstraintSet& cs, const Vocabulary& vocab) {
  const auto emit = [&](const std::vector<Constraint>& v, const char* set_tag,
                        std::string& out) {
    std::vector<Constraint> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (const Constraint& c : sorted) {
      check_name_writable(vocab.name(c.a));
      if (is_binary(c.kind)) check_name_writable(vocab.name(c.b));
      out += to_string(c, vocab);
      out += ";weight=" + format_weight(c.weight);
      out += ";set=";
      out += set_tag;
      out += "\n";
    }
  };
  std::string out;
  emit(cs.tdc, "TDC", out);
  emit(cs.ldc, "LDC", out);
  return out;
}

ConstraintSet parse_constraints(const std::string& text, const Vocabulary& vocab) {
  ConstraintSet cs;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fail = [&](const std::string& why) -> void {
      throw DataError("constraint file line " + std::to_string(line_no) + ": " + why);
    };

    const std::size_t open = line.find('(');
    const std::size_t close = line.find(')', open == std::string::npos ? 0 : open);
    if (open == std::string::npos || close == std::string::npos) fail("missing (args)");
    const auto kind = kind_from_name(line.substr(0, open));
    if (!kind) fail("unknown template kind '" + line.substr(0, open) + "'");

    const std::string args = line.substr(open + 1, close - open - 1);
    std::string a_name = args;
    std::string b_name;
    if (const std::size_t comma = args.find(','); comma != std::string::npos) {
      a_name = args.substr(0, comma);
      b_name = args.substr(comma + 1);
    }

    int n = 1;
    double weight = 1.0;
    std::string set_tag;
    std::size_t pos = close + 1;
    while (pos < line.size()) {
      if (line[pos] != ';') fail("expected ';' before attribute list");
      std::size_t end = line.find(';', pos + 1);
      if (end == std::string::npos) end = line.size();
      const std::string attr = line.substr(pos + 1, end - pos - 1);
      const std::size_t eq = attr.find('=');
      if (eq == std::string::npos) fail("malformed attribute '" + attr + "'");
      const std::string key = attr.substr(0, eq);
      const std::string value = attr.substr(eq + 1);
      try {
        if (key == "n") {
          n = std::stoi(value);
        } else if (key == "weight") {
          weight = std::stod(value);
        } else if (key == "set") {
          set_tag = value;
        } else {
          fail("unknown attribute '" + key + "'");
        }
      } catch (const std::logic_error&) {
        fail("bad value for '" + key + "'");
      }
      pos = end;
    }
    if (set_tag != "TDC" && set_tag != "LDC") fail("set must be TDC or LDC");

    Constraint c;
    try {
      c = is_binary(*kind)
              ? Constraint::binary(*kind, vocab.id(a_name), vocab.id(b_name), weight)
              : Constraint::unary(*kind, vocab.id(a_name), n, weight);
    } catch (const ArgumentError& e) {
      fail(e.what());
    }
    (set_tag == "TDC" ? cs.tdc : cs.ldc).push_back(c);
  }
  return cs;
}

void save_constraints(const ConstraintSet& cs, const Vocabulary& vocab,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write constraint file: " + path);
  out << serialize_constraints(cs, vocab);
  if (!out) throw IoError("failed writing constraint file: " + path);
}

ConstraintSet load_constraints(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open constraint file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_constraints(text, vocab);
}

}  // namespace revised::declare
