#include "revised/pipeline/manifest.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "revised/errors.hpp"
#include "revised/hash.hpp"

namespace revised::pipeline {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

Manifest Manifest::load_or_create(const std::string& work_dir) {
  Manifest m;
  m.dir_ = work_dir;
  m.path_ = (fs::path(work_dir) / "manifest.json").string();
  if (!fs::exists(m.path_)) return m;

  std::ifstream in(m.path_, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + m.path_);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ArtifactError(std::string("corrupt manifest: ") + e.what());
  }
  if (j.contains("stages")) {
    for (const auto& [stage, js] : j.at("stages").items()) {
      Stage s;
      if (js.contains("inputs")) {
        for (const auto& [p, h] : js.at("inputs").items()) {
          s.inputs[p] = std::stoull(h.template get<std::string>(), nullptr, 16);
        }
      }
      if (js.contains("outputs")) {
        for (const auto& [p, h] : js.at("outputs").items()) {
          s.outputs[p] = std::stoull(h.template get<std::string>(), nullptr, 16);
        }
      }
      s.config_hash = std::stoull(js.value("config_hash", std::string("0")), nullptr, 16);
      s.duration_ms = js.value("duration_ms", 0.0);
      m.stages_[stage] = std::move(s);
    }
  }
  return m;
}

bool Manifest::up_to_date(const std::string& stage, const HashMap& inputs,
                          std::uint64_t config_hash) const {
  auto it = stages_.find(stage);
  if (it == stages_.end()) return false;
  const Stage& s = it->second;
  if (s.config_hash != config_hash || s.inputs != inputs) return false;
  for (const auto& [rel, h] : s.outputs) {
    const fs::path p = fs::path(dir_) / rel;
    if (!fs::exists(p)) return false;
    if (hash_file(p.string()) != h) return false;
  }
  return true;
}

void Manifest::record(const std::string& stage, const HashMap& inputs,
                      const HashMap& outputs, std::uint64_t config_hash,
                      double duration_ms) {
  stages_[stage] = Stage{inputs, outputs, config_hash, duration_ms};
}

void Manifest::verify_artifact(const std::string& rel_path) const {
  for (const auto& [stage, s] : stages_) {
    auto it = s.outputs.find(rel_path);
    if (it == s.outputs.end()) continue;
    const fs::path p = fs::path(dir_) / rel_path;
    if (!fs::exists(p)) {
      throw ArtifactError("artifact '" + rel_path + "' recorded by stage '" + stage +
                          "' is missing");
    }
    if (hash_file(p.string()) != it->second) {
      throw ArtifactError("artifact '" + rel_path + "' is stale: bytes differ from the " +
                          "record written by stage '" + stage + "'");
    }
    return;
  }
}

void Manifest::save() const {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  ordered_json stages = ordered_json::object();
  for (const auto& [name, s] : stages_) {
    ordered_json js;
    ordered_json in = ordered_json::object();
    for (const auto& [p, h] : s.inputs) in[p] = hex64(h);
    ordered_json out = ordered_json::object();
    for (const auto& [p, h] : s.outputs) out[p] = hex64(h);
    js["inputs"] = std::move(in);
    js["outputs"] = std::move(out);
    js["config_hash"] = hex64(s.config_hash);
    js["duration_ms"] = s.duration_ms;
    stages[name] = std::move(js);
  }
  j["stages"] = std::move(stages);

  std::ofstream out(path_, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path_);
  out << j.dump(1) << "\n";
}

}  // namespace revised::pipeline
