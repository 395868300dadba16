#include "revised/eventlog/container.hpp"

#include <fstream>

#include <json.hpp>

namespace revised::eventlog {

using ordered_json = nlohmann::ordered_json;

std::string serialize_log(const EventLog& log) {
  ordered_json j;
  j["format_version"] = kLogFormatVersion;
  std::vector<std::string> names = log.vocab.names();
  names.pop_back();  // EoS is implicit; re-added on load
  j["vocabulary"] = names;
  j["max_len"] = log.max_len;
  ordered_json traces = ordered_json::array();
  for (const Trace& t : log.traces) {
    ordered_json jt;
    jt["case_id"] = t.case_id;
    jt["activities"] = t.activities;
    jt["timestamps"] = t.timestamps;
    jt["label"] = t.label;
    traces.push_back(std::move(jt));
  }
  j["traces"] = std::move(traces);
  return j.dump(1) + "\n";
}

EventLog deserialize_log(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid log container: ") + e.what());
  }
  if (!j.contains("format_version") || j["format_version"].get<int>() != kLogFormatVersion) {
    throw ArtifactError("unsupported log container version");
  }
  EventLog log;
  log.vocab = Vocabulary::from_names(j.at("vocabulary").get<std::vector<std::string>>());
  log.max_len = j.at("max_len").get<std::size_t>();
  for (const auto& jt : j.at("traces")) {
    Trace t;
    t.case_id = jt.at("case_id").get<std::string>();
    t.activities = jt.at("activities").get<std::vector<ActivityId>>();
    t.timestamps = jt.at("timestamps").get<std::vector<Timestamp>>();
    t.label = jt.at("label").get<int>();
    if (t.length() > log.max_len) throw DataError("trace longer than max_len in container");
    for (ActivityId a : t.activities) {
      if (!log.vocab.valid(a)) throw DataError("activity id out of range in container");
    }
    log.traces.push_back(std::move(t));
  }
  return log;
}

void save_log(const EventLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write log file: " + path);
  out << serialize_log(log);
  if (!out) throw IoError("failed writing log file: " + path);
}

EventLog load_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open log file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_log(text);
}

}  // namespace revised::eventlog
