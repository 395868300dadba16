#pragma once

#include <cstdint>
#include <span>

#include "revised/eventlog/types.hpp"
#include "revised/neural/layers.hpp"
#include "revised/neural/vae.hpp"

namespace revised::neural {

struct ClassifierDims {
  std::size_t input = 0;
  std::size_t hidden = 32;
  std::size_t max_len = 0;
};

struct ClassifierCache {
  LstmCache lstm;
};

// Recurrent binary outcome predictor: LSTM over the padded rows, linear
// readout off the final hidden state to one logit. Accepts soft probability
// rows as well as hard one-hot rows (gradients flow through the input).
class ClassifierModel {
public:
  ClassifierModel(const ClassifierDims& dims, std::uint64_t seed, std::uint64_t vocab_hash,
                  double threshold = 0.5, bool random_init = true);

  ClassifierModel(const ClassifierModel&) = delete;
  ClassifierModel& operator=(const ClassifierModel&) = delete;
  ClassifierModel(ClassifierModel&&) = default;
  ClassifierModel& operator=(ClassifierModel&&) = default;

  struct Prediction {
    double logit = 0.0;
    double probability = 0.5;
  };

  Prediction predict(const Mat& x, ClassifierCache* cache = nullptr) const;
  // Backprop a scalar logit gradient; adds input gradients into *dx.
  void predict_backward(const ClassifierCache& cache, double dlogit, Mat* dx,
                        bool param_grads) const;

  int predicted_label(const Mat& x) const {
    return predict(x).probability > threshold_ ? 1 : 0;
  }

  const ClassifierDims& dims() const { return dims_; }
  double threshold() const { return threshold_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t vocab_hash() const { return vocab_hash_; }
  ParamStore& store() { return store_; }
  const ParamStore& store() const { return store_; }

private:
  ClassifierDims dims_;
  double threshold_ = 0.5;
  std::uint64_t seed_ = 0;
  std::uint64_t vocab_hash_ = 0;
  ParamStore store_;
  LstmCell cell_;
  Linear readout_;
};

struct ClassifierEval {
  double auc = 0.0;
  double accuracy = 0.0;
};

struct ClassifierTrainResult {
  ClassifierModel model;
  std::vector<double> loss_curve;  // mean BCE per epoch
  ClassifierEval train_eval;
  ClassifierEval test_eval;  // zeroed when no eval log given
};

// BCE training with the shared deterministic contract. Throws DataError if
// the training log carries a single class.
ClassifierTrainResult train_classifier(const EventLog& log, const TrainConfig& cfg,
                                       const EventLog* eval_log = nullptr,
                                       double threshold = 0.5);

// Rank-based AUC (ties get average rank).
double auc_score(std::span<const double> scores, std::span<const int> labels);

ClassifierEval evaluate_classifier(const ClassifierModel& model, const EventLog& log);

}  // namespace revised::neural
