#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "revised/errors.hpp"
#include "revised/mat.hpp"
#include "revised/rng.hpp"

namespace revised::neural {

// A named parameter tensor with its gradient buffer. Stored flat; shape is
// bookkeeping for serialization and fan-in computation.
struct Param {
  std::string name;
  std::vector<std::size_t> shape;
  Vec value;
  Vec grad;

  std::size_t size() const { return value.size(); }
  // fan-in: last shape dimension (columns for matrices, size for vectors)
  std::size_t fan_in() const { return shape.empty() ? 1 : shape.back(); }
};

// Insertion-ordered collection of parameters. Pointers returned by add()
// stay valid for the life of the store (and across moves).
class ParamStore {
public:
  ParamStore() = default;
  ParamStore(ParamStore&&) = default;
  ParamStore& operator=(ParamStore&&) = default;

  ParamStore(const ParamStore& o) { *this = o; }
  ParamStore& operator=(const ParamStore& o) {
    params_.clear();
    index_.clear();
    for (const auto& p : o.params_) {
      params_.push_back(std::make_unique<Param>(*p));
      index_[p->name] = params_.size() - 1;
    }
    return *this;
  }

  Param* add(std::string name, std::vector<std::size_t> shape) {
    if (index_.count(name)) throw ArgumentError("duplicate parameter name: " + name);
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    auto p = std::make_unique<Param>();
    p->name = std::move(name);
    p->shape = std::move(shape);
    p->value.assign(n, 0.0);
    p->grad.assign(n, 0.0);
    index_[p->name] = params_.size();
    params_.push_back(std::move(p));
    return params_.back().get();
  }

  Param* find(const std::string& name) {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : params_[it->second].get();
  }
  const Param* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : params_[it->second].get();
  }

  std::size_t count() const { return params_.size(); }
  Param& at(std::size_t i) { return *params_[i]; }
  const Param& at(std::size_t i) const { return *params_[i]; }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& p : params_) n += p->size();
    return n;
  }

  void zero_grads() {
    for (auto& p : params_) std::fill(p->grad.begin(), p->grad.end(), 0.0);
  }

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) initialization, in insertion
  // order so it is a pure function of the seed.
  void init_uniform(Rng& rng) {
    for (auto& p : params_) {
      const double s = 1.0 / std::sqrt(static_cast<double>(p->fan_in()));
      for (double& v : p->value) v = rng.uniform(-s, s);
    }
  }

private:
  std::vector<std::unique_ptr<Param>> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Adam with global gradient-norm clipping.
class AdamOptimizer {
public:
  AdamOptimizer(double lr, double clip_norm, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8)
      : lr_(lr), clip_(clip_norm), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(ParamStore& store);

private:
  double lr_, clip_, beta1_, beta2_, eps_;
  std::uint64_t t_ = 0;
  std::vector<Vec> m_, v_;
};

}  // namespace revised::neural
