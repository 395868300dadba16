#pragma once

#include <span>

#include "revised/neural/params.hpp"

namespace revised::neural {

double sigmoid(double x);

// y = W x + b, W is (out x in) row-major.
struct Linear {
  Param* W = nullptr;
  Param* b = nullptr;
  std::size_t in = 0, out = 0;

  Linear() = default;
  Linear(ParamStore& store, const std::string& name, std::size_t in_dim, std::size_t out_dim);

  void forward(const double* x, double* y) const;
  // dW += dy x^T, db += dy, dx += W^T dy (dx may be null)
  void backward(const double* x, const double* dy, double* dx, bool param_grads) const;
};

// Standard LSTM cell with input/forget/output gates; gate packing order in
// the 4H pre-activation vector is [i, f, g, o].
struct LstmCell {
  Param* Wx = nullptr;  // 4H x I
  Param* Wh = nullptr;  // 4H x H
  Param* b = nullptr;   // 4H
  std::size_t input = 0, hidden = 0;

  LstmCell() = default;
  LstmCell(ParamStore& store, const std::string& name, std::size_t input_dim,
           std::size_t hidden_dim);
};

// Per-sequence activation cache for backpropagation through time.
struct LstmCache {
  std::size_t steps = 0;
  Vec h0, c0;
  std::vector<Vec> x;                // per-step input copies
  std::vector<Vec> i, f, g, o;       // post-activation gates
  std::vector<Vec> c, h;             // states
};

// Runs the cell over `steps` inputs (xs[t] points at input_dim doubles),
// starting from (h0, c0); fills the cache and returns nothing (read h from
// the cache).
void lstm_forward(const LstmCell& cell, std::span<const double* const> xs, const Vec& h0,
                  const Vec& c0, LstmCache& cache);

// Backpropagates dh (steps x hidden; per-step upstream gradients) through
// the cached run. Accumulates parameter gradients when param_grads is set;
// writes per-step input gradients into dx (steps x input) when non-null;
// adds the gradients w.r.t. the initial state into dh0/dc0 when non-null.
void lstm_backward(const LstmCell& cell, const LstmCache& cache, const Mat& dh, Mat* dx,
                   Vec* dh0, Vec* dc0, bool param_grads);

// Row softmax with max subtraction.
void softmax_row(const double* logits, double* probs, std::size_t n);
// dlogits = (dp - (dp . p)) * p, accumulated into dlogits.
void softmax_backward_row(const double* probs, const double* dprobs, double* dlogits,
                          std::size_t n);

}  // namespace revised::neural
