#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace revised::pipeline {

inline constexpr const char* kToolVersion = "1.0.0";

// Per-run bookkeeping in <work_dir>/manifest.json: config fingerprint,
// input/output artifact hashes and wall-clock timings per stage. Stages
// whose recorded inputs and config are unchanged and whose outputs still
// hash correctly are skipped; stages that consume an artifact verify its
// hash against the record and refuse stale files.
class Manifest {
public:
  static Manifest load_or_create(const std::string& work_dir);

  using HashMap = std::map<std::string, std::uint64_t>;  // path (relative) -> fnv64

  // True when `stage` was recorded with these inputs + config and all its
  // recorded outputs still exist with matching hashes.
  bool up_to_date(const std::string& stage, const HashMap& inputs,
                  std::uint64_t config_hash) const;

  void record(const std::string& stage, const HashMap& inputs, const HashMap& outputs,
              std::uint64_t config_hash, double duration_ms);

  // Throws ArtifactError when the artifact was produced by a recorded stage
  // and its bytes no longer match (stale or tampered input).
  void verify_artifact(const std::string& rel_path) const;

  void save() const;
  const std::string& dir() const { return dir_; }

private:
  std::string dir_;
  std::string path_;
  struct Stage {
    HashMap inputs;
    HashMap outputs;
    std::uint64_t config_hash = 0;
    double duration_ms = 0.0;
  };
  std::map<std::string, Stage> stages_;
};

}  // namespace revised::pipeline
