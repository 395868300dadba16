#pragma once

#include <cstdint>
#include <span>

#include "revised/declare/constraint.hpp"
#include "revised/declare/soft.hpp"
#include "revised/eventlog/types.hpp"
#include "revised/neural/layers.hpp"

namespace revised::neural {

using eventlog::EncodedTrace;
using eventlog::EventLog;

struct VaeDims {
  std::size_t input = 0;    // vocabulary size |A|
  std::size_t hidden = 32;
  std::size_t latent = 8;   // r
  std::size_t max_len = 0;  // decoder steps
};

struct VaeLambdas {
  double nll = 1.0;
  double kl = 1.0;
  double dtc = 1.0;
};

struct VaeEncodeCache {
  LstmCache lstm;
};

struct VaeDecodeCache {
  Vec z;
  Vec h0, c0;
  LstmCache lstm;
  Mat probs;  // max_len x input
};

// Recurrent VAE. Encoder: LSTM over the padded one-hot rows, linear heads
// for mu and logvar off the final hidden state. Decoder: z maps to a
// learned initial state and is fed as the input of every step; a shared
// linear head plus row softmax produces per-step activity distributions.
class VaeModel {
public:
  VaeModel(const VaeDims& dims, const VaeLambdas& lambdas, std::uint64_t seed,
           std::uint64_t vocab_hash, bool random_init = true);

  VaeModel(const VaeModel&) = delete;
  VaeModel& operator=(const VaeModel&) = delete;
  VaeModel(VaeModel&&) = default;
  VaeModel& operator=(VaeModel&&) = default;

  struct EncodeOut {
    Vec mu;
    Vec logvar;
  };

  EncodeOut encode(const Mat& x, VaeEncodeCache* cache = nullptr) const;
  Mat decode(const Vec& z, VaeDecodeCache* cache = nullptr) const;

  // Backprop through the cached decode: dprobs is the gradient w.r.t. the
  // output probability matrix. Adds the gradient w.r.t. z into *dz.
  // param_grads additionally accumulates into the store (training only;
  // not safe under concurrent use).
  void decode_backward(const VaeDecodeCache& cache, const Mat& dprobs, Vec* dz,
                       bool param_grads) const;
  void encode_backward(const VaeEncodeCache& cache, const Vec& dmu, const Vec& dlogvar,
                       bool param_grads) const;

  const VaeDims& dims() const { return dims_; }
  const VaeLambdas& lambdas() const { return lambdas_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t vocab_hash() const { return vocab_hash_; }
  ParamStore& store() { return store_; }
  const ParamStore& store() const { return store_; }

private:
  VaeDims dims_;
  VaeLambdas lambdas_;
  std::uint64_t seed_ = 0;
  std::uint64_t vocab_hash_ = 0;
  ParamStore store_;
  LstmCell enc_cell_;
  Linear enc_mu_, enc_logvar_;
  Linear dec_h0_, dec_c0_;
  LstmCell dec_cell_;
  Linear dec_out_;
};

// z = mu + exp(0.5 * logvar) .* noise
Vec reparameterize(const Vec& mu, const Vec& logvar, const Vec& noise);

struct VaeLossBreakdown {
  double total = 0.0;
  double nll = 0.0;
  double kl = 0.0;
  double dtc = 0.0;
};

// total = l_nll*NLL + l_kl*KL + l_dtc*soft-violation(tdc, recon).
// NLL is the per-step categorical negative log-likelihood masked beyond the
// trace's effective length; KL is the closed-form Gaussian divergence from
// the standard normal prior.
VaeLossBreakdown vae_loss(const VaeModel& m, const EncodedTrace& x, const Mat& recon,
                          const Vec& mu, const Vec& logvar,
                          std::span<const declare::Constraint> tdc);

struct TrainConfig {
  std::size_t epochs = 30;
  std::size_t batch_size = 16;
  double learning_rate = 1e-3;
  std::uint64_t seed = 1;
  double clip_norm = 5.0;
  double lambda_nll = 1.0;
  double lambda_kl = 1.0;
  double lambda_dtc = 1.0;
  std::size_t hidden = 32;
  std::size_t latent = 8;
};

struct EpochLoss {
  double total = 0.0, nll = 0.0, kl = 0.0, dtc = 0.0;
};

struct VaeTrainResult {
  VaeModel model;
  std::vector<EpochLoss> trajectory;
};

// Deterministic minibatch training: fixed seed drives initialization,
// shuffling and reparameterization noise, so the result is bit-reproducible
// for a given (log, tdc, cfg) on one platform.
VaeTrainResult train_vae(const EventLog& log, std::span<const declare::Constraint> tdc,
                         const TrainConfig& cfg);

}  // namespace revised::neural
