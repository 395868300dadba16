#include "revised/eventlog/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace revised::eventlog {

namespace {

// RFC-4180-ish row reader: quoted fields may contain commas, doubled quotes
// and newlines.
bool read_row(std::istream& in, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int ch;
  while ((ch = in.get()) != EOF) {
    any = true;
    char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c == '\r') {
      // swallow; \r\n handled by the \n branch
    } else {
      field.push_back(c);
    }
  }
  if (!any) return false;
  out.push_back(field);
  return true;
}

bool row_is_blank(const std::vector<std::string>& row) {
  return row.size() == 1 && row[0].empty();
}

int to_digit_span(const std::string& s, std::size_t pos, std::size_t len) {
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (i >= s.size() || s[i] < '0' || s[i] > '9') return -1;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

// Days since 1970-01-01 for a civil date (Gregorian, proleptic).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

Timestamp parse_iso8601(const std::string& text) {
  const auto fail = [&]() -> Timestamp {
    throw DataError("unparseable ISO-8601 timestamp: '" + text + "'");
  };
  if (text.size() < 10) return fail();
  int year = to_digit_span(text, 0, 4);
  int month = to_digit_span(text, 5, 2);
  int day = to_digit_span(text, 8, 2);
  if (year < 0 || month < 1 || month > 12 || day < 1 || day > 31) return fail();
  if (text[4] != '-' || text[7] != '-') return fail();

  int hh = 0, mm = 0, ss = 0, millis = 0;
  std::size_t pos = 10;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    ++pos;
    hh = to_digit_span(text, pos, 2);
    if (hh < 0 || hh > 23 || pos + 2 >= text.size() || text[pos + 2] != ':') return fail();
    mm = to_digit_span(text, pos + 3, 2);
    if (mm < 0 || mm > 59) return fail();
    pos += 5;
    if (pos < text.size() && text[pos] == ':') {
      ss = to_digit_span(text, pos + 1, 2);
      if (ss < 0 || ss > 60) return fail();
      pos += 3;
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos + digits < text.size() && text[pos + digits] >= '0' &&
               text[pos + digits] <= '9')
          ++digits;
        if (digits == 0) return fail();
        // Millisecond precision: truncate extra digits.
        for (std::size_t i = 0; i < 3; ++i) {
          millis = millis * 10 + (i < digits ? text[pos + i] - '0' : 0);
        }
        pos += digits;
      }
    }
  }
  std::int64_t offset_minutes = 0;
  if (pos < text.size()) {
    char c = text[pos];
    if (c == 'Z' && pos + 1 == text.size()) {
      // UTC
    } else if (c == '+' || c == '-') {
      int oh = to_digit_span(text, pos + 1, 2);
      if (oh < 0 || pos + 3 >= text.size() || text[pos + 3] != ':') return fail();
      int om = to_digit_span(text, pos + 4, 2);
      if (om < 0 || pos + 6 != text.size()) return fail();
      offset_minutes = (c == '+' ? 1 : -1) * (oh * 60 + om);
    } else {
      return fail();
    }
  }
  std::int64_t days = days_from_civil(year, month, day);
  std::int64_t secs = days * 86400 + hh * 3600 + mm * 60 + ss - offset_minutes * 60;
  return secs * 1000 + millis;
}

EventLog parse_csv(std::istream& in, const CsvSchema& schema) {
  std::vector<std::string> header;
  if (!read_row(in, header) || row_is_blank(header)) {
    throw SchemaError("empty input: CSV header row required");
  }
  const auto col = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError("missing required column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_case = col(schema.case_id);
  const std::size_t c_act = col(schema.activity);
  const std::size_t c_ts = col(schema.timestamp);
  const std::size_t c_label = col(schema.label);

  struct RawEvent {
    std::string activity;
    Timestamp ts;
    std::size_t input_order;
  };
  struct RawCase {
    std::vector<RawEvent> events;
    int label = -1;
    std::size_t first_row = 0;
  };

  std::map<std::string, RawCase> cases;            // keyed by case id
  std::vector<std::string> case_order;             // first-appearance order
  std::vector<std::string> activity_names;

  std::vector<std::string> row;
  std::size_t row_number = 1;  // header is row 1
  while (read_row(in, row)) {
    ++row_number;
    if (row_is_blank(row)) continue;
    const std::size_t needed = std::max({c_case, c_act, c_ts, c_label}) + 1;
    if (row.size() < needed) {
      throw DataError("row " + std::to_string(row_number) + ": expected at least " +
                      std::to_string(needed) + " fields, got " + std::to_string(row.size()));
    }
    const std::string& case_id = row[c_case];
    const std::string& activity = row[c_act];
    Timestamp ts;
    try {
      ts = parse_iso8601(row[c_ts]);
    } catch (const DataError& e) {
      throw DataError("row " + std::to_string(row_number) + ": " + e.what());
    }
    const std::string& label_text = row[c_label];
    int label;
    if (label_text == "0") {
      label = 0;
    } else if (label_text == "1") {
      label = 1;
    } else {
      throw DataError("row " + std::to_string(row_number) + ": label must be 0 or 1, got '" +
                      label_text + "'");
    }

    auto [it, inserted] = cases.try_emplace(case_id);
    RawCase& rc = it->second;
    if (inserted) {
      rc.label = label;
      rc.first_row = row_number;
      case_order.push_back(case_id);
    } else if (rc.label != label) {
      throw DataError("case '" + case_id + "': inconsistent labels " +
                      std::to_string(rc.label) + " and " + std::to_string(label) +
                      " (row " + std::to_string(row_number) + ")");
    }
    rc.events.push_back({activity, ts, row_number});
    activity_names.push_back(activity);
  }

  EventLog log;
  log.vocab = Vocabulary::from_names(std::move(activity_names));
  log.max_len = 0;
  log.traces.reserve(case_order.size());
  for (const auto& case_id : case_order) {
    RawCase& rc = cases[case_id];
    std::stable_sort(rc.events.begin(), rc.events.end(),
                     [](const RawEvent& a, const RawEvent& b) { return a.ts < b.ts; });
    Trace t;
    t.case_id = case_id;
    t.label = rc.label;
    t.activities.reserve(rc.events.size());
    t.timestamps.reserve(rc.events.size());
    for (const auto& e : rc.events) {
      t.activities.push_back(log.vocab.id(e.activity));
      t.timestamps.push_back(e.ts);
    }
    log.max_len = std::max(log.max_len, t.length());
    log.traces.push_back(std::move(t));
  }
  return log;
}

EventLog parse_csv_file(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open CSV file: " + path);
  return parse_csv(in, schema);
}

}  // namespace revised::eventlog
