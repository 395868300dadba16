#pragma once

#include <string>

#include "revised/neural/classifier.hpp"
#include "revised/neural/vae.hpp"

namespace revised::neural {

// Versioned model container: magic, JSON header (kind, vocabulary hash,
// dims, loss weights, seed, tensor directory), then the named tensors as
// little-endian 64-bit floats in directory order. Byte-identical for
// identical models.
inline constexpr int kModelFormatVersion = 1;

void save_vae(const VaeModel& model, const std::string& path);
VaeModel load_vae(const std::string& path);

void save_classifier(const ClassifierModel& model, const std::string& path);
ClassifierModel load_classifier(const std::string& path);

// Peeks at the header kind ("vae" or "classifier") without loading tensors.
std::string model_kind(const std::string& path);

// Throws ArtifactError when a loaded model's vocabulary hash does not match
// the log it is used with.
void require_vocab_hash(std::uint64_t model_hash, std::uint64_t log_hash,
                        const std::string& what);

}  // namespace revised::neural
