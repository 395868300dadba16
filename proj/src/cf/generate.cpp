#include "revised/cf/generate.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "revised/kernels.hpp"

namespace revised::cf {

namespace {

using ordered_json = nlohmann::ordered_json;

double desired_probability(double prob_label1, int desired_label) {
  return desired_label == 1 ? prob_label1 : 1.0 - prob_label1;
}

// dist = beta*|d|_1 + |d|_2^2 with d = factual - soft; optionally adds
// d(dist)/d(soft) = -beta*sign(d) - 2d into *grad.
double elastic_net(const Mat& factual, const Mat& soft, double beta, double scale,
                   Mat* grad) {
  double l1 = 0.0, l2sq = 0.0;
  for (std::size_t i = 0; i < soft.size(); ++i) {
    const double d = factual.d[i] - soft.d[i];
    l1 += std::fabs(d);
    l2sq += d * d;
    if (grad) {
      const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
      grad->d[i] += scale * (-beta * sign - 2.0 * d);
    }
  }
  return beta * l1 + l2sq;
}

}  // namespace

void CfConfig::validate() const {
  if (!(threshold_p > 0.0 && threshold_p < 1.0)) {
    throw ArgumentError("cf threshold p must lie in (0,1)");
  }
  if (max_iter < 1) throw ArgumentError("cf max_iter must be >= 1");
  if (lambda_hinge < 0.0 || lambda_dist < 0.0 || lambda_dlc < 0.0 || beta < 0.0 ||
      alpha <= 0.0) {
    throw ArgumentError("cf weights must be non-negative and alpha positive");
  }
  if (desired_label != 0 && desired_label != 1) {
    throw ArgumentError("desired label must be 0 or 1");
  }
}

CfLossBreakdown cf_loss(const Mat& soft, const EncodedTrace& factual,
                        const neural::ClassifierModel& clf,
                        std::span<const declare::Constraint> ldc, const CfConfig& cfg) {
  if (!soft.same_shape(factual.m)) throw ArgumentError("cf_loss: shape mismatch");
  CfLossBreakdown lb;
  const double logit = clf.predict(soft).logit;
  lb.hinge = std::max(0.0, 1.0 - cfg.zeta() * logit);
  lb.dist = elastic_net(factual.m, soft, cfg.beta, 0.0, nullptr);
  lb.dlc = declare::soft_violation_total(ldc, soft, soft.rows).value;
  lb.total = cfg.lambda_hinge * lb.hinge + cfg.lambda_dist * lb.dist +
             cfg.lambda_dlc * lb.dlc;
  return lb;
}

namespace {

CfResult run_search(const Trace& factual, const neural::VaeModel& vae,
                    const neural::ClassifierModel& clf,
                    std::span<const declare::Constraint> ldc, const CfConfig& cfg,
                    const Vocabulary& vocab, bool require_ldc) {
  cfg.validate();
  const std::size_t max_len = vae.dims().max_len;
  const EncodedTrace x = eventlog::encode_trace(factual, vocab, max_len);

  CfResult res;
  res.factual = factual;
  res.factual_probability = clf.predict(x.m).probability;
  const double factual_desired = desired_probability(res.factual_probability,
                                                     cfg.desired_label);
  if (factual_desired > cfg.threshold_p) {
    throw PreconditionError(
        "factual '" + factual.case_id + "' is already predicted as the desired label (p=" +
        std::to_string(factual_desired) + ")");
  }

  Vec z = vae.encode(x.m).mu;  // posterior mean: deterministic start
  const std::size_t r = z.size();

  std::map<std::vector<ActivityId>, std::size_t> seen;  // trace -> candidate slot

  for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
    neural::VaeDecodeCache dc;
    const Mat soft = vae.decode(z, &dc);

    neural::ClassifierCache cc;
    const auto soft_pred = clf.predict(soft, &cc);

    CfLossBreakdown lb;
    lb.hinge = std::max(0.0, 1.0 - cfg.zeta() * soft_pred.logit);
    Mat dsoft(soft.rows, soft.cols);
    lb.dist = elastic_net(x.m, soft, cfg.beta, cfg.lambda_dist, &dsoft);
    if (cfg.lambda_dlc != 0.0 && !ldc.empty()) {
      Mat dlc_grad(soft.rows, soft.cols);
      lb.dlc = declare::soft_violation_total_grad(ldc, soft, soft.rows, &dlc_grad).value;
      kernels::axpy(cfg.lambda_dlc, dlc_grad.d.data(), dsoft.d.data(), dsoft.size());
    } else {
      lb.dlc = declare::soft_violation_total(ldc, soft, soft.rows).value;
    }
    lb.total = cfg.lambda_hinge * lb.hinge + cfg.lambda_dist * lb.dist +
               cfg.lambda_dlc * lb.dlc;
    if (!std::isfinite(lb.total)) {
      throw NumericError("counterfactual search produced a non-finite loss at iteration " +
                         std::to_string(iter));
    }

    // hinge gradient flows through the classifier into the soft matrix
    if (lb.hinge > 0.0 && cfg.lambda_hinge != 0.0) {
      clf.predict_backward(cc, -cfg.zeta() * cfg.lambda_hinge, &dsoft, false);
    }

    // harvest the candidate decoded from the current z
    const eventlog::DecodedTrace decoded = eventlog::decode_matrix(soft, vocab);
    const EncodedTrace hard = eventlog::one_hot(decoded.activities, vocab, max_len);
    const double hard_prob = clf.predict(hard.m).probability;
    const bool prob_ok =
        desired_probability(hard_prob, cfg.desired_label) > cfg.threshold_p;
    const bool ldc_ok =
        !require_ldc ||
        declare::weighted_violations(ldc, std::span<const ActivityId>(decoded.activities)) ==
            0.0;
    if (prob_ok && ldc_ok) {
      ++res.accepted_before_dedup;
      auto it = seen.find(decoded.activities);
      if (it == seen.end()) {
        CfCandidate cand;
        cand.activities = decoded.activities;
        cand.has_eos = decoded.has_eos;
        cand.probability = hard_prob;
        cand.loss = lb;
        cand.iteration = iter;
        seen.emplace(cand.activities, res.candidates.size());
        res.candidates.push_back(std::move(cand));
      } else if (lb.total < res.candidates[it->second].loss.total) {
        CfCandidate& slot = res.candidates[it->second];
        slot.loss = lb;
        slot.iteration = iter;
        slot.probability = hard_prob;
      }
    }

    // gradient step in latent space
    Vec dz(r, 0.0);
    vae.decode_backward(dc, dsoft, &dz, false);
    for (std::size_t k = 0; k < r; ++k) z[k] -= cfg.alpha * dz[k];
  }
  res.iterations = cfg.max_iter;
  return res;
}

}  // namespace

CfResult generate(const Trace& factual, const neural::VaeModel& vae,
                  const neural::ClassifierModel& clf,
                  std::span<const declare::Constraint> ldc, const CfConfig& cfg,
                  const Vocabulary& vocab) {
  return run_search(factual, vae, clf, ldc, cfg, vocab, /*require_ldc=*/true);
}

CfResult generate_revise_plus(const Trace& factual, const neural::VaeModel& vae_plain,
                              const neural::ClassifierModel& clf, const CfConfig& cfg,
                              const Vocabulary& vocab) {
  CfConfig plain = cfg;
  plain.lambda_dlc = 0.0;
  return run_search(factual, vae_plain, clf, {}, plain, vocab, /*require_ldc=*/false);
}

std::string serialize_results(std::span<const CfResult> results, const Vocabulary& vocab,
                              const std::string& algorithm) {
  std::string out;
  for (const CfResult& r : results) {
    ordered_json j;
    j["algorithm"] = algorithm;
    j["factual_id"] = r.factual.case_id;
    std::vector<std::string> names;
    for (ActivityId a : r.factual.activities) names.push_back(vocab.name(a));
    j["factual"] = names;
    j["factual_label"] = r.factual.label;
    j["factual_probability"] = r.factual_probability;
    j["iterations"] = r.iterations;
    j["accepted_before_dedup"] = r.accepted_before_dedup;
    ordered_json cands = ordered_json::array();
    for (const CfCandidate& c : r.candidates) {
      ordered_json jc;
      std::vector<std::string> cnames;
      for (ActivityId a : c.activities) cnames.push_back(vocab.name(a));
      jc["activities"] = cnames;
      jc["has_eos"] = c.has_eos;
      jc["probability"] = c.probability;
      jc["iteration"] = c.iteration;
      jc["loss"] = {{"total", c.loss.total},
                    {"hinge", c.loss.hinge},
                    {"dist", c.loss.dist},
                    {"dlc", c.loss.dlc}};
      cands.push_back(std::move(jc));
    }
    j["candidates"] = std::move(cands);
    out += j.dump();
    out += "\n";
  }
  return out;
}

std::vector<CfResult> parse_results(const std::string& text, const Vocabulary& vocab,
                                    std::string* algorithm) {
  std::vector<CfResult> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("invalid results line: ") + e.what());
    }
    if (algorithm) *algorithm = j.value("algorithm", "");
    CfResult r;
    r.factual.case_id = j.at("factual_id").get<std::string>();
    for (const auto& n : j.at("factual")) {
      r.factual.activities.push_back(vocab.id(n.get<std::string>()));
    }
    r.factual.timestamps.assign(r.factual.activities.size(), 0);
    r.factual.label = j.value("factual_label", 0);
    r.factual_probability = j.at("factual_probability").get<double>();
    r.iterations = j.at("iterations").get<std::size_t>();
    r.accepted_before_dedup = j.at("accepted_before_dedup").get<std::size_t>();
    for (const auto& jc : j.at("candidates")) {
      CfCandidate c;
      for (const auto& n : jc.at("activities")) {
        c.activities.push_back(vocab.id(n.get<std::string>()));
      }
      c.has_eos = jc.at("has_eos").get<bool>();
      c.probability = jc.at("probability").get<double>();
      c.iteration = jc.at("iteration").get<std::size_t>();
      c.loss.total = jc.at("loss").at("total").get<double>();
      c.loss.hinge = jc.at("loss").at("hinge").get<double>();
      c.loss.dist = jc.at("loss").at("dist").get<double>();
      c.loss.dlc = jc.at("loss").at("dlc").get<double>();
      r.candidates.push_back(std::move(c));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void save_results(std::span<const CfResult> results, const Vocabulary& vocab,
                  const std::string& algorithm, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write results file: " + path);
  out << serialize_results(results, vocab, algorithm);
  if (!out) throw IoError("failed writing results file: " + path);
}

std::vector<CfResult> load_results(const std::string& path, const Vocabulary& vocab,
                                   std::string* algorithm) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open results file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_results(text, vocab, algorithm);
}

}  // namespace revised::cf
