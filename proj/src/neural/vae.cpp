#include "revised/neural/vae.hpp"

#include <algorithm>
#include <cmath>

#include "revised/eventlog/encode.hpp"
#include "revised/kernels.hpp"

namespace revised::neural {

namespace {

constexpr double kSimplexTol = 1e-6;
constexpr double kLogFloor = 1e-300;

void check_finite(const Vec& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ArgumentError(std::string(what) + " contains a non-finite value");
  }
}

}  // namespace

VaeModel::VaeModel(const VaeDims& dims, const VaeLambdas& lambdas, std::uint64_t seed,
                   std::uint64_t vocab_hash, bool random_init)
    : dims_(dims), lambdas_(lambdas), seed_(seed), vocab_hash_(vocab_hash) {
  if (dims.input == 0 || dims.max_len == 0) throw ArgumentError("vae dims must be positive");
  if (dims.latent < 1 || dims.latent > dims.input * dims.max_len) {
    throw ArgumentError("latent dim must lie in [1, input features]");
  }
  enc_cell_ = LstmCell(store_, "enc.cell", dims.input, dims.hidden);
  enc_mu_ = Linear(store_, "enc.mu", dims.hidden, dims.latent);
  enc_logvar_ = Linear(store_, "enc.logvar", dims.hidden, dims.latent);
  dec_h0_ = Linear(store_, "dec.h0", dims.latent, dims.hidden);
  dec_c0_ = Linear(store_, "dec.c0", dims.latent, dims.hidden);
  dec_cell_ = LstmCell(store_, "dec.cell", dims.latent, dims.hidden);
  dec_out_ = Linear(store_, "dec.out", dims.hidden, dims.input);
  if (random_init) {
    Rng rng(seed);
    store_.init_uniform(rng);
  }
}

VaeModel::EncodeOut VaeModel::encode(const Mat& x, VaeEncodeCache* cache) const {
  if (x.cols != dims_.input || x.rows != dims_.max_len) {
    throw ArgumentError("encode: input shape " + std::to_string(x.rows) + "x" +
                        std::to_string(x.cols) + " does not match model dims");
  }
  VaeEncodeCache local;
  VaeEncodeCache& c = cache ? *cache : local;

  std::vector<const double*> xs(x.rows);
  for (std::size_t t = 0; t < x.rows; ++t) xs[t] = x.row(t);
  Vec h0(dims_.hidden, 0.0), c0(dims_.hidden, 0.0);
  lstm_forward(enc_cell_, xs, h0, c0, c.lstm);

  EncodeOut out;
  out.mu.assign(dims_.latent, 0.0);
  out.logvar.assign(dims_.latent, 0.0);
  const Vec& ht = c.lstm.h.back();
  enc_mu_.forward(ht.data(), out.mu.data());
  enc_logvar_.forward(ht.data(), out.logvar.data());
  return out;
}

Mat VaeModel::decode(const Vec& z, VaeDecodeCache* cache) const {
  if (z.size() != dims_.latent) throw ArgumentError("decode: latent size mismatch");
  check_finite(z, "decode: z");

  VaeDecodeCache local;
  VaeDecodeCache& c = cache ? *cache : local;
  c.z = z;

  Vec h0_pre(dims_.hidden), c0_pre(dims_.hidden);
  dec_h0_.forward(z.data(), h0_pre.data());
  dec_c0_.forward(z.data(), c0_pre.data());
  c.h0.assign(dims_.hidden, 0.0);
  c.c0.assign(dims_.hidden, 0.0);
  for (std::size_t k = 0; k < dims_.hidden; ++k) {
    c.h0[k] = std::tanh(h0_pre[k]);
    c.c0[k] = std::tanh(c0_pre[k]);
  }

  std::vector<const double*> xs(dims_.max_len, z.data());
  lstm_forward(dec_cell_, xs, c.h0, c.c0, c.lstm);

  c.probs = Mat(dims_.max_len, dims_.input);
  Vec logits(dims_.input);
  for (std::size_t t = 0; t < dims_.max_len; ++t) {
    dec_out_.forward(c.lstm.h[t].data(), logits.data());
    softmax_row(logits.data(), c.probs.row(t), dims_.input);
  }
  return c.probs;
}

void VaeModel::decode_backward(const VaeDecodeCache& cache, const Mat& dprobs, Vec* dz,
                               bool param_grads) const {
  if (!dprobs.same_shape(cache.probs)) {
    throw ArgumentError("decode_backward: gradient shape mismatch");
  }
  const std::size_t T = dims_.max_len;
  const std::size_t H = dims_.hidden;

  Mat dh(T, H);
  Vec dlogits(dims_.input);
  for (std::size_t t = 0; t < T; ++t) {
    std::fill(dlogits.begin(), dlogits.end(), 0.0);
    softmax_backward_row(cache.probs.row(t), dprobs.row(t), dlogits.data(), dims_.input);
    dec_out_.backward(cache.lstm.h[t].data(), dlogits.data(), dh.row(t), param_grads);
  }

  Mat dx(T, dims_.latent);
  Vec dh0(H, 0.0), dc0(H, 0.0);
  lstm_backward(dec_cell_, cache.lstm, dh, &dx, &dh0, &dc0, param_grads);

  // All step inputs alias z.
  Vec dz_local(dims_.latent, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    kernels::axpy(1.0, dx.row(t), dz_local.data(), dims_.latent);
  }
  // Initial-state heads: h0 = tanh(W z + b).
  Vec dpre(H);
  for (std::size_t k = 0; k < H; ++k) dpre[k] = dh0[k] * (1.0 - cache.h0[k] * cache.h0[k]);
  dec_h0_.backward(cache.z.data(), dpre.data(), dz_local.data(), param_grads);
  for (std::size_t k = 0; k < H; ++k) dpre[k] = dc0[k] * (1.0 - cache.c0[k] * cache.c0[k]);
  dec_c0_.backward(cache.z.data(), dpre.data(), dz_local.data(), param_grads);

  if (dz) kernels::axpy(1.0, dz_local.data(), dz->data(), dims_.latent);
}

void VaeModel::encode_backward(const VaeEncodeCache& cache, const Vec& dmu,
                               const Vec& dlogvar, bool param_grads) const {
  const std::size_t T = cache.lstm.steps;
  const std::size_t H = dims_.hidden;
  Mat dh(T, H);
  const Vec& ht = cache.lstm.h.back();
  enc_mu_.backward(ht.data(), dmu.data(), dh.row(T - 1), param_grads);
  enc_logvar_.backward(ht.data(), dlogvar.data(), dh.row(T - 1), param_grads);
  lstm_backward(enc_cell_, cache.lstm, dh, nullptr, nullptr, nullptr, param_grads);
}

Vec reparameterize(const Vec& mu, const Vec& logvar, const Vec& noise) {
  if (mu.size() != logvar.size() || mu.size() != noise.size()) {
    throw ArgumentError("reparameterize: size mismatch");
  }
  check_finite(mu, "reparameterize: mu");
  check_finite(logvar, "reparameterize: logvar");
  Vec z(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    z[k] = mu[k] + std::exp(0.5 * logvar[k]) * noise[k];
  }
  return z;
}

VaeLossBreakdown vae_loss(const VaeModel& m, const EncodedTrace& x, const Mat& recon,
                          const Vec& mu, const Vec& logvar,
                          std::span<const declare::Constraint> tdc) {
  if (!recon.same_shape(x.m)) throw ArgumentError("vae_loss: shape mismatch");
  for (std::size_t t = 0; t < recon.rows; ++t) {
    const double s = kernels::sum(recon.row(t), recon.cols);
    if (std::fabs(s - 1.0) > kSimplexTol) {
      throw NumericError("vae_loss: reconstruction row " + std::to_string(t) +
                         " is off the simplex (sum " + std::to_string(s) + ")");
    }
  }

  VaeLossBreakdown lb;
  for (std::size_t t = 0; t < x.effective_len; ++t) {
    const double* row = x.m.row(t);
    std::size_t target = 0;
    for (std::size_t c2 = 1; c2 < x.m.cols; ++c2) {
      if (row[c2] > row[target]) target = c2;
    }
    lb.nll -= std::log(std::max(recon(t, target), kLogFloor));
  }
  for (std::size_t k = 0; k < mu.size(); ++k) {
    lb.kl += 0.5 * (mu[k] * mu[k] + std::exp(logvar[k]) - 1.0 - logvar[k]);
  }
  lb.dtc = declare::soft_violation_total(tdc, recon, recon.rows).value;
  const VaeLambdas& l = m.lambdas();
  lb.total = l.nll * lb.nll + l.kl * lb.kl + l.dtc * lb.dtc;
  return lb;
}

VaeTrainResult train_vae(const EventLog& log, std::span<const declare::Constraint> tdc,
                         const TrainConfig& cfg) {
  if (log.traces.empty()) throw ArgumentError("train_vae: empty log");

  VaeDims dims;
  dims.input = log.vocab.size();
  dims.hidden = cfg.hidden;
  dims.latent = cfg.latent;
  dims.max_len = log.max_len;
  VaeLambdas lambdas{cfg.lambda_nll, cfg.lambda_kl, cfg.lambda_dtc};

  VaeTrainResult res{VaeModel(dims, lambdas, cfg.seed, log.vocab.hash()), {}};
  VaeModel& model = res.model;

  std::vector<EncodedTrace> enc;
  enc.reserve(log.traces.size());
  for (const auto& t : log.traces) enc.push_back(eventlog::encode_trace(t, log.vocab, log.max_len));

  Rng stream(derive_seed(cfg.seed, "vae-train-stream"));
  AdamOptimizer adam(cfg.learning_rate, cfg.clip_norm);
  const std::size_t r = dims.latent;
  const std::size_t T = dims.max_len;
  const std::size_t A = dims.input;

  std::vector<std::size_t> order(enc.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    stream.shuffle(order);
    EpochLoss ep;
    std::size_t in_batch = 0;
    model.store().zero_grads();
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      const EncodedTrace& x = enc[order[idx]];

      VaeEncodeCache ec;
      auto [mu, logvar] = model.encode(x.m, &ec);
      Vec eps(r);
      for (double& e : eps) e = stream.normal();
      Vec z = reparameterize(mu, logvar, eps);
      VaeDecodeCache dc;
      Mat recon = model.decode(z, &dc);

      VaeLossBreakdown lb = vae_loss(model, x, recon, mu, logvar, tdc);
      if (!std::isfinite(lb.total)) {
        throw NumericError("train_vae: non-finite loss at epoch " + std::to_string(epoch) +
                           ", trace index " + std::to_string(order[idx]) +
                           " (nll=" + std::to_string(lb.nll) + ", kl=" + std::to_string(lb.kl) +
                           ", dtc=" + std::to_string(lb.dtc) + ")");
      }
      ep.total += lb.total;
      ep.nll += lb.nll;
      ep.kl += lb.kl;
      ep.dtc += lb.dtc;

      // d(total)/d(recon probabilities)
      Mat dprobs(T, A);
      for (std::size_t t = 0; t < x.effective_len; ++t) {
        const double* row = x.m.row(t);
        std::size_t target = 0;
        for (std::size_t c2 = 1; c2 < A; ++c2) {
          if (row[c2] > row[target]) target = c2;
        }
        dprobs(t, target) -= cfg.lambda_nll / std::max(recon(t, target), kLogFloor);
      }
      if (cfg.lambda_dtc != 0.0 && !tdc.empty()) {
        Mat dtc_grad(T, A);
        declare::soft_violation_total_grad(tdc, recon, T, &dtc_grad);
        kernels::axpy(cfg.lambda_dtc, dtc_grad.d.data(), dprobs.d.data(), dprobs.size());
      }

      Vec dz(r, 0.0);
      model.decode_backward(dc, dprobs, &dz, true);

      Vec dmu(r), dlogvar(r);
      for (std::size_t k = 0; k < r; ++k) {
        dmu[k] = dz[k] + cfg.lambda_kl * mu[k];
        dlogvar[k] = dz[k] * eps[k] * 0.5 * std::exp(0.5 * logvar[k]) +
                     cfg.lambda_kl * 0.5 * (std::exp(logvar[k]) - 1.0);
      }
      model.encode_backward(ec, dmu, dlogvar, true);

      if (++in_batch == cfg.batch_size || idx + 1 == order.size()) {
        adam.step(model.store());
        model.store().zero_grads();
        in_batch = 0;
      }
    }
    const double n = static_cast<double>(order.size());
    res.trajectory.push_back({ep.total / n, ep.nll / n, ep.kl / n, ep.dtc / n});
  }
  return res;
}

}  // namespace revised::neural
