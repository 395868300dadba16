#include "revised/neural/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "revised/eventlog/encode.hpp"
#include "revised/kernels.hpp"

namespace revised::neural {

ClassifierModel::ClassifierModel(const ClassifierDims& dims, std::uint64_t seed,
                                 std::uint64_t vocab_hash, double threshold,
                                 bool random_init)
    : dims_(dims), threshold_(threshold), seed_(seed), vocab_hash_(vocab_hash) {
  if (dims.input == 0 || dims.max_len == 0) {
    throw ArgumentError("classifier dims must be positive");
  }
  cell_ = LstmCell(store_, "clf.cell", dims.input, dims.hidden);
  readout_ = Linear(store_, "clf.readout", dims.hidden, 1);
  if (random_init) {
    Rng rng(seed);
    store_.init_uniform(rng);
  }
}

ClassifierModel::Prediction ClassifierModel::predict(const Mat& x,
                                                     ClassifierCache* cache) const {
  if (x.cols != dims_.input || x.rows != dims_.max_len) {
    throw ArgumentError("classifier: input shape " + std::to_string(x.rows) + "x" +
                        std::to_string(x.cols) + " does not match model dims");
  }
  ClassifierCache local;
  ClassifierCache& c = cache ? *cache : local;

  std::vector<const double*> xs(x.rows);
  for (std::size_t t = 0; t < x.rows; ++t) xs[t] = x.row(t);
  Vec h0(dims_.hidden, 0.0), c0(dims_.hidden, 0.0);
  lstm_forward(cell_, xs, h0, c0, c.lstm);

  Prediction p;
  readout_.forward(c.lstm.h.back().data(), &p.logit);
  p.probability = sigmoid(p.logit);
  return p;
}

void ClassifierModel::predict_backward(const ClassifierCache& cache, double dlogit, Mat* dx,
                                       bool param_grads) const {
  const std::size_t T = cache.lstm.steps;
  Mat dh(T, dims_.hidden);
  readout_.backward(cache.lstm.h.back().data(), &dlogit, dh.row(T - 1), param_grads);
  lstm_backward(cell_, cache.lstm, dh, dx, nullptr, nullptr, param_grads);
}

double auc_score(std::span<const double> scores, std::span<const int> labels) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks over tie groups, then the Mann-Whitney statistic.
  std::vector<double> rank(scores.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double pos_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (labels[k] == 1) {
      pos_rank_sum += rank[k];
      ++n_pos;
    }
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) return 0.5;
  const double u = pos_rank_sum - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

ClassifierEval evaluate_classifier(const ClassifierModel& model, const EventLog& log) {
  std::vector<double> scores;
  std::vector<int> labels;
  std::size_t correct = 0;
  for (const auto& t : log.traces) {
    const auto enc = eventlog::encode_trace(t, log.vocab, model.dims().max_len);
    const double prob = model.predict(enc.m).probability;
    scores.push_back(prob);
    labels.push_back(t.label);
    const int predicted = prob > model.threshold() ? 1 : 0;
    if (predicted == t.label) ++correct;
  }
  ClassifierEval ev;
  ev.auc = auc_score(scores, labels);
  ev.accuracy = log.traces.empty() ? 0.0
                                   : static_cast<double>(correct) /
                                         static_cast<double>(log.traces.size());
  return ev;
}

ClassifierTrainResult train_classifier(const EventLog& log, const TrainConfig& cfg,
                                       const EventLog* eval_log, double threshold) {
  if (log.traces.empty()) throw ArgumentError("train_classifier: empty log");
  bool has0 = false, has1 = false;
  for (const auto& t : log.traces) (t.label == 1 ? has1 : has0) = true;
  if (!has0 || !has1) {
    throw DataError("train_classifier: both outcome classes must be present");
  }

  ClassifierDims dims;
  dims.input = log.vocab.size();
  dims.hidden = cfg.hidden;
  dims.max_len = log.max_len;

  ClassifierTrainResult res{ClassifierModel(dims, cfg.seed, log.vocab.hash(), threshold),
                            {},
                            {},
                            {}};
  ClassifierModel& model = res.model;

  std::vector<EncodedTrace> enc;
  enc.reserve(log.traces.size());
  for (const auto& t : log.traces) enc.push_back(eventlog::encode_trace(t, log.vocab, log.max_len));

  Rng stream(derive_seed(cfg.seed, "clf-train-stream"));
  AdamOptimizer adam(cfg.learning_rate, cfg.clip_norm);

  std::vector<std::size_t> order(enc.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    stream.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t in_batch = 0;
    model.store().zero_grads();
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      const EncodedTrace& x = enc[order[idx]];
      const double y = static_cast<double>(log.traces[order[idx]].label);

      ClassifierCache cache;
      const auto pred = model.predict(x.m, &cache);
      const double l = pred.logit;
      // numerically stable BCE-with-logit
      const double loss = std::max(l, 0.0) - l * y + std::log1p(std::exp(-std::fabs(l)));
      if (!std::isfinite(loss)) {
        throw NumericError("train_classifier: non-finite loss at epoch " +
                           std::to_string(epoch));
      }
      epoch_loss += loss;
      const double dlogit = sigmoid(l) - y;
      model.predict_backward(cache, dlogit, nullptr, true);

      if (++in_batch == cfg.batch_size || idx + 1 == order.size()) {
        adam.step(model.store());
        model.store().zero_grads();
        in_batch = 0;
      }
    }
    res.loss_curve.push_back(epoch_loss / static_cast<double>(order.size()));
  }

  res.train_eval = evaluate_classifier(model, log);
  if (eval_log) res.test_eval = evaluate_classifier(model, *eval_log);
  return res;
}

}  // namespace revised::neural
