#include "revised/neural/gradcheck.hpp"

#include <cmath>
#include <vector>

#include "revised/neural/layers.hpp"
#include "revised/rng.hpp"

namespace revised::neural {

double max_rel_error_fd(const std::function<double()>& loss, double* x, std::size_t n,
                        std::span<const double> analytic, double step) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const double up = loss();
    x[i] = saved - step;
    const double down = loss();
    x[i] = saved;
    const double fd = (up - down) / (2.0 * step);
    const double denom = std::max({1e-4, std::fabs(fd), std::fabs(analytic[i])});
    worst = std::max(worst, std::fabs(fd - analytic[i]) / denom);
  }
  return worst;
}

double grad_check_linear(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t in = 7, out = 5;
  ParamStore store;
  Linear lin(store, "lin", in, out);
  store.init_uniform(rng);
  Vec x(in), coeff(out);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  for (double& v : coeff) v = rng.uniform(-1.0, 1.0);

  Vec y(out);
  const auto loss = [&]() {
    lin.forward(x.data(), y.data());
    double l = 0.0;
    for (std::size_t k = 0; k < out; ++k) l += 0.5 * coeff[k] * y[k] * y[k];
    return l;
  };

  loss();
  Vec dy(out);
  for (std::size_t k = 0; k < out; ++k) dy[k] = coeff[k] * y[k];
  store.zero_grads();
  Vec dx(in, 0.0);
  lin.backward(x.data(), dy.data(), dx.data(), true);

  double worst = max_rel_error_fd(loss, x.data(), in, dx);
  worst = std::max(worst, max_rel_error_fd(loss, lin.W->value.data(), lin.W->size(),
                                           lin.W->grad));
  worst = std::max(worst, max_rel_error_fd(loss, lin.b->value.data(), lin.b->size(),
                                           lin.b->grad));
  return worst;
}

double grad_check_lstm(std::uint64_t seed, std::size_t steps) {
  Rng rng(seed);
  const std::size_t in = 4, hidden = 5;
  ParamStore store;
  LstmCell cell(store, "cell", in, hidden);
  store.init_uniform(rng);

  Mat x(steps, in);
  Mat coeff(steps, hidden);
  for (double& v : x.d) v = rng.uniform(-1.0, 1.0);
  for (double& v : coeff.d) v = rng.uniform(-1.0, 1.0);
  Vec h0(hidden, 0.0), c0(hidden, 0.0);
  for (double& v : h0) v = rng.uniform(-0.5, 0.5);
  for (double& v : c0) v = rng.uniform(-0.5, 0.5);

  LstmCache cache;
  const auto loss = [&]() {
    std::vector<const double*> xs(steps);
    for (std::size_t t = 0; t < steps; ++t) xs[t] = x.row(t);
    lstm_forward(cell, xs, h0, c0, cache);
    double l = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
      for (std::size_t k = 0; k < hidden; ++k) l += coeff(t, k) * cache.h[t][k];
    }
    return l;
  };

  loss();
  store.zero_grads();
  Mat dx(steps, in);
  Vec dh0(hidden, 0.0), dc0(hidden, 0.0);
  lstm_backward(cell, cache, coeff, &dx, &dh0, &dc0, true);

  double worst = max_rel_error_fd(loss, x.d.data(), x.size(), dx.d);
  worst = std::max(worst, max_rel_error_fd(loss, h0.data(), hidden, dh0));
  worst = std::max(worst, max_rel_error_fd(loss, c0.data(), hidden, dc0));
  for (auto* p : {cell.Wx, cell.Wh, cell.b}) {
    worst = std::max(worst, max_rel_error_fd(loss, p->value.data(), p->size(), p->grad));
  }
  return worst;
}

double grad_check_softmax_nll(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = 6;
  Vec logits(n);
  for (double& v : logits) v = rng.uniform(-2.0, 2.0);
  const std::size_t target = static_cast<std::size_t>(rng.below(n));

  Vec probs(n);
  const auto loss = [&]() {
    softmax_row(logits.data(), probs.data(), n);
    return -std::log(probs[target]);
  };

  loss();
  Vec dprobs(n, 0.0);
  dprobs[target] = -1.0 / probs[target];
  Vec dlogits(n, 0.0);
  softmax_backward_row(probs.data(), dprobs.data(), dlogits.data(), n);
  return max_rel_error_fd(loss, logits.data(), n, dlogits);
}

}  // namespace revised::neural
