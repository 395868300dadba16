#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace revised {

// FNV-1a, 64 bit. Used for artifact fingerprints and seed derivation; the
// value is part of the on-disk contract, so it must stay platform-stable.
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::vector<std::string>& parts) {
  std::uint64_t h = kFnvOffset;
  for (const auto& p : parts) {
    h = fnv1a64(p, h);
    h = fnv1a64(std::string_view("\x1f", 1), h);  // separator so {"ab","c"} != {"a","bc"}
  }
  return h;
}

std::string hex64(std::uint64_t v);

// Hash of a file's raw bytes. Throws IoError if unreadable.
std::uint64_t hash_file(const std::string& path);

// Derives a per-stage seed from a global seed and a stage name.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stage) {
  std::uint64_t h = fnv1a64(stage);
  h ^= global_seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace revised
