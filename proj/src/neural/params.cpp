#include "revised/neural/params.hpp"

#include <cmath>

#include "revised/kernels.hpp"

namespace revised::neural {

void AdamOptimizer::step(ParamStore& store) {
  if (m_.empty()) {
    m_.resize(store.count());
    v_.resize(store.count());
    for (std::size_t i = 0; i < store.count(); ++i) {
      m_[i].assign(store.at(i).size(), 0.0);
      v_[i].assign(store.at(i).size(), 0.0);
    }
  }
  ++t_;

  double norm_sq = 0.0;
  for (std::size_t i = 0; i < store.count(); ++i) {
    const Vec& g = store.at(i).grad;
    norm_sq += kernels::sumsq(g.data(), g.size());
  }
  const double norm = std::sqrt(norm_sq);
  const double scale = (clip_ > 0.0 && norm > clip_) ? clip_ / norm : 1.0;

  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));

  for (std::size_t i = 0; i < store.count(); ++i) {
    Param& p = store.at(i);
    Vec& m = m_[i];
    Vec& v = v_[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double g = p.grad[k] * scale;
      m[k] = beta1_ * m[k] + (1.0 - beta1_) * g;
      v[k] = beta2_ * v[k] + (1.0 - beta2_) * g * g;
      const double mhat = m[k] / bc1;
      const double vhat = v[k] / bc2;
      p.value[k] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

}  // namespace revised::neural
