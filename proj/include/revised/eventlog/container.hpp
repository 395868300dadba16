#pragma once

#include <string>

#include "revised/eventlog/types.hpp"

namespace revised::eventlog {

// Versioned on-disk container for processed logs. JSON with ordered keys so
// identical logs serialize to identical bytes.
inline constexpr int kLogFormatVersion = 1;

std::string serialize_log(const EventLog& log);
EventLog deserialize_log(const std::string& text);

void save_log(const EventLog& log, const std::string& path);
EventLog load_log(const std::string& path);

}  // namespace revised::eventlog
