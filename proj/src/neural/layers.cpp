#include "revised/neural/layers.hpp"

#include <cmath>

#include "revised/kernels.hpp"

namespace revised::neural {

double sigmoid(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Linear::Linear(ParamStore& store, const std::string& name, std::size_t in_dim,
               std::size_t out_dim)
    : in(in_dim), out(out_dim) {
  W = store.add(name + ".W", {out_dim, in_dim});
  b = store.add(name + ".b", {out_dim});
}

void Linear::forward(const double* x, double* y) const {
  kernels::matvec(W->value.data(), out, in, x, y, false);
  kernels::axpy(1.0, b->value.data(), y, out);
}

void Linear::backward(const double* x, const double* dy, double* dx, bool param_grads) const {
  if (param_grads) {
    kernels::ger(1.0, dy, out, x, in, W->grad.data());
    kernels::axpy(1.0, dy, b->grad.data(), out);
  }
  if (dx) kernels::matvec_t(W->value.data(), out, in, dy, dx, true);
}

LstmCell::LstmCell(ParamStore& store, const std::string& name, std::size_t input_dim,
                   std::size_t hidden_dim)
    : input(input_dim), hidden(hidden_dim) {
  Wx = store.add(name + ".Wx", {4 * hidden_dim, input_dim});
  Wh = store.add(name + ".Wh", {4 * hidden_dim, hidden_dim});
  b = store.add(name + ".b", {4 * hidden_dim});
}

void lstm_forward(const LstmCell& cell, std::span<const double* const> xs, const Vec& h0,
                  const Vec& c0, LstmCache& cache) {
  const std::size_t H = cell.hidden;
  const std::size_t I = cell.input;
  const std::size_t T = xs.size();
  cache.steps = T;
  cache.h0 = h0;
  cache.c0 = c0;
  cache.x.assign(T, Vec(I));
  cache.i.assign(T, Vec(H));
  cache.f.assign(T, Vec(H));
  cache.g.assign(T, Vec(H));
  cache.o.assign(T, Vec(H));
  cache.c.assign(T, Vec(H));
  cache.h.assign(T, Vec(H));

  Vec pre(4 * H);
  const Vec* h_prev = &h0;
  const Vec* c_prev = &c0;
  for (std::size_t t = 0; t < T; ++t) {
    std::copy(xs[t], xs[t] + I, cache.x[t].begin());
    kernels::matvec(cell.Wx->value.data(), 4 * H, I, xs[t], pre.data(), false);
    kernels::matvec(cell.Wh->value.data(), 4 * H, H, h_prev->data(), pre.data(), true);
    kernels::axpy(1.0, cell.b->value.data(), pre.data(), 4 * H);
    for (std::size_t k = 0; k < H; ++k) {
      const double iv = sigmoid(pre[k]);
      const double fv = sigmoid(pre[H + k]);
      const double gv = std::tanh(pre[2 * H + k]);
      const double ov = sigmoid(pre[3 * H + k]);
      cache.i[t][k] = iv;
      cache.f[t][k] = fv;
      cache.g[t][k] = gv;
      cache.o[t][k] = ov;
      cache.c[t][k] = fv * (*c_prev)[k] + iv * gv;
      cache.h[t][k] = ov * std::tanh(cache.c[t][k]);
    }
    h_prev = &cache.h[t];
    c_prev = &cache.c[t];
  }
}

void lstm_backward(const LstmCell& cell, const LstmCache& cache, const Mat& dh, Mat* dx,
                   Vec* dh0, Vec* dc0, bool param_grads) {
  const std::size_t H = cell.hidden;
  const std::size_t I = cell.input;
  const std::size_t T = cache.steps;

  Vec dh_next(H, 0.0);  // gradient flowing into h_t from step t+1
  Vec dc_next(H, 0.0);
  Vec da(4 * H);
  Vec dh_prev(H);

  for (std::size_t t = T; t-- > 0;) {
    const Vec& c_prev = t == 0 ? cache.c0 : cache.c[t - 1];
    const Vec& h_prev = t == 0 ? cache.h0 : cache.h[t - 1];
    for (std::size_t k = 0; k < H; ++k) {
      const double dht = dh(t, k) + dh_next[k];
      const double tc = std::tanh(cache.c[t][k]);
      const double ov = cache.o[t][k];
      const double dov = dht * tc;
      double dct = dht * ov * (1.0 - tc * tc) + dc_next[k];
      const double iv = cache.i[t][k];
      const double fv = cache.f[t][k];
      const double gv = cache.g[t][k];
      const double div = dct * gv;
      const double dgv = dct * iv;
      const double dfv = dct * c_prev[k];
      da[k] = div * iv * (1.0 - iv);
      da[H + k] = dfv * fv * (1.0 - fv);
      da[2 * H + k] = dgv * (1.0 - gv * gv);
      da[3 * H + k] = dov * ov * (1.0 - ov);
      dc_next[k] = dct * fv;
    }
    if (param_grads) {
      kernels::ger(1.0, da.data(), 4 * H, cache.x[t].data(), I, cell.Wx->grad.data());
      kernels::ger(1.0, da.data(), 4 * H, h_prev.data(), H, cell.Wh->grad.data());
      kernels::axpy(1.0, da.data(), cell.b->grad.data(), 4 * H);
    }
    if (dx) {
      kernels::matvec_t(cell.Wx->value.data(), 4 * H, I, da.data(), dx->row(t), true);
    }
    std::fill(dh_prev.begin(), dh_prev.end(), 0.0);
    kernels::matvec_t(cell.Wh->value.data(), 4 * H, H, da.data(), dh_prev.data(), false);
    dh_next = dh_prev;
  }
  if (dh0) kernels::axpy(1.0, dh_next.data(), dh0->data(), H);
  if (dc0) kernels::axpy(1.0, dc_next.data(), dc0->data(), H);
}

void softmax_row(const double* logits, double* probs, std::size_t n) {
  double mx = logits[0];
  for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, logits[i]);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    probs[i] = std::exp(logits[i] - mx);
    z += probs[i];
  }
  const double inv = 1.0 / z;
  for (std::size_t i = 0; i < n; ++i) probs[i] *= inv;
}

void softmax_backward_row(const double* probs, const double* dprobs, double* dlogits,
                          std::size_t n) {
  const double dp_dot_p = kernels::dot(dprobs, probs, n);
  for (std::size_t i = 0; i < n; ++i) {
    dlogits[i] += probs[i] * (dprobs[i] - dp_dot_p);
  }
}

}  // namespace revised::neural
