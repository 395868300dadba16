#pragma once

#include <iosfwd>
#include <string>

#include "revised/eventlog/types.hpp"

namespace revised::eventlog {

// Logical -> actual column names. Defaults match the documented CSV
// contract: case_id,activity,timestamp,label.
struct CsvSchema {
  std::string case_id = "case_id";
  std::string activity = "activity";
  std::string timestamp = "timestamp";
  std::string label = "label";
};

// Parses an event log from CSV. Header row required; timestamps ISO-8601;
// label in {0,1} and constant per case. Events are grouped by case (cases
// ordered by first appearance in the input), sorted by timestamp within a
// case with input order breaking ties. Deterministic: identical bytes give
// identical logs including id assignment.
EventLog parse_csv(std::istream& in, const CsvSchema& schema = {});
EventLog parse_csv_file(const std::string& path, const CsvSchema& schema = {});

// ISO-8601 timestamp -> epoch milliseconds. Accepts YYYY-MM-DD with optional
// [T ]HH:MM[:SS[.fff]] and optional Z or +-HH:MM offset. Throws DataError.
Timestamp parse_iso8601(const std::string& text);

}  // namespace revised::eventlog
