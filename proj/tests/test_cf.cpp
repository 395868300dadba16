#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "revised/cf/generate.hpp"
#include "revised/declare/mine.hpp"
#include "revised/eventlog/preprocess.hpp"
#include "revised/neural/gradcheck.hpp"
#include "support/synthetic.hpp"

using namespace revised;
using namespace revised::cf;
using revised::eventlog::EventLog;
using revised::eventlog::Trace;

namespace {

struct Fixture {
  EventLog log;
  neural::VaeModel vae;
  neural::ClassifierModel clf;
  std::vector<declare::Constraint> ldc;

  static Fixture make(std::size_t traces = 80, std::uint64_t seed = 7) {
    test::SyntheticSpec spec;
    spec.traces = traces;
    spec.seed = seed;
    EventLog log = eventlog::append_eos(test::make_synthetic_log(spec));

    neural::TrainConfig vcfg;
    vcfg.epochs = 10;
    vcfg.batch_size = 8;
    vcfg.hidden = 12;
    vcfg.latent = 4;
    vcfg.seed = 2;
    std::vector<Trace> desired;
    for (const auto& t : log.traces) {
      if (t.label == 1) desired.push_back(t);
    }
    auto cs = declare::derive_tdc_ldc(log.traces, desired, 1.0, 2);
    auto vres = neural::train_vae(log, cs.tdc, vcfg);

    neural::TrainConfig ccfg;
    ccfg.epochs = 20;
    ccfg.batch_size = 8;
    ccfg.hidden = 12;
    ccfg.seed = 3;
    auto cres = neural::train_classifier(log, ccfg);

    return Fixture{std::move(log), std::move(vres.model), std::move(cres.model),
                   std::move(cs.ldc)};
  }

  // a test trace predicted against the desired label (prob of 1 <= p)
  const Trace* negative_factual(const CfConfig& cfg) const {
    for (const auto& t : log.traces) {
      const auto enc = eventlog::encode_trace(t, log.vocab, log.max_len);
      const double p1 = clf.predict(enc.m).probability;
      const double desired = cfg.desired_label == 1 ? p1 : 1.0 - p1;
      if (desired <= cfg.threshold_p) return &t;
    }
    return nullptr;
  }
};

}  // namespace

TEST_CASE("cf_loss closed forms") {
  // zero-readout classifier: logit 0 regardless of input
  const auto vocab = eventlog::Vocabulary::from_names({"A", "B"});
  neural::ClassifierDims dims{vocab.size(), 4, 3};
  neural::ClassifierModel clf(dims, 1, 0, 0.5, /*random_init=*/false);

  eventlog::EncodedTrace fact;
  fact.m = Mat(3, 3);
  fact.m(0, 0) = 1.0;
  fact.m(1, 2) = 1.0;
  fact.effective_len = 2;

  CfConfig cfg;
  cfg.desired_label = 1;

  SUBCASE("hinge from the logit") {
    // logit 0 -> hinge = max(0, 1-0) = 1
    Mat soft = fact.m;
    auto lb = cf_loss(soft, fact, clf, {}, cfg);
    CHECK(lb.hinge == doctest::Approx(1.0));
    CHECK(lb.dist == 0.0);
    CHECK(lb.dlc == 0.0);
    CHECK(lb.total == doctest::Approx(cfg.lambda_hinge * 1.0));
  }

  SUBCASE("elastic net arithmetic") {
    // delta entries {1,-1,0,...}: beta*2 + 2 = 4 with beta=1
    Mat soft = fact.m;
    soft(0, 0) = 0.0;
    soft(0, 1) = 1.0;
    auto lb = cf_loss(soft, fact, clf, {}, cfg);
    CHECK(lb.dist == doctest::Approx(4.0));
  }

  SUBCASE("shape mismatch is rejected") {
    Mat soft(2, 3);
    CHECK_THROWS_AS(cf_loss(soft, fact, clf, {}, cfg), ArgumentError);
  }
}

TEST_CASE("hinge switch respects the desired label") {
  CfConfig c1;
  c1.desired_label = 1;
  CHECK(c1.zeta() == 1.0);
  CfConfig c0;
  c0.desired_label = 0;
  CHECK(c0.zeta() == -1.0);
  // zeta=1, logit 2 -> hinge 0; logit 0.5 -> hinge 0.5 (checked through the
  // formula the loss uses)
  CHECK(std::max(0.0, 1.0 - c1.zeta() * 2.0) == 0.0);
  CHECK(std::max(0.0, 1.0 - c1.zeta() * 0.5) == doctest::Approx(0.5));
}

TEST_CASE("generate on the synthetic fixture") {
  auto fx = Fixture::make();
  CfConfig cfg;
  cfg.max_iter = 120;
  cfg.alpha = 0.1;
  cfg.lambda_dist = 0.02;

  const Trace* factual = fx.negative_factual(cfg);
  REQUIRE(factual != nullptr);

  SUBCASE("viability invariant and dedup") {
    CfResult res = generate(*factual, fx.vae, fx.clf, fx.ldc, cfg, fx.log.vocab);
    CHECK(res.iterations == cfg.max_iter);
    std::set<std::vector<eventlog::ActivityId>> uniq;
    for (const auto& c : res.candidates) {
      const auto enc = eventlog::one_hot(c.activities, fx.log.vocab, fx.log.max_len);
      const double p1 = fx.clf.predict(enc.m).probability;
      CHECK(p1 > cfg.threshold_p);
      CHECK(c.probability == doctest::Approx(p1));
      CHECK(declare::weighted_violations(
                fx.ldc, std::span<const eventlog::ActivityId>(c.activities)) == 0.0);
      CHECK(uniq.insert(c.activities).second);  // duplicate-free
    }
    CHECK(res.accepted_before_dedup >= res.candidates.size());
  }

  SUBCASE("determinism") {
    CfResult a = generate(*factual, fx.vae, fx.clf, fx.ldc, cfg, fx.log.vocab);
    CfResult b = generate(*factual, fx.vae, fx.clf, fx.ldc, cfg, fx.log.vocab);
    REQUIRE(a.candidates.size() == b.candidates.size());
    CHECK(a.accepted_before_dedup == b.accepted_before_dedup);
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
      CHECK(a.candidates[i].activities == b.candidates[i].activities);
      CHECK(a.candidates[i].loss.total == b.candidates[i].loss.total);
      CHECK(a.candidates[i].iteration == b.candidates[i].iteration);
    }
  }

  SUBCASE("precondition: factual already predicted desired") {
    const Trace* positive = nullptr;
    for (const auto& t : fx.log.traces) {
      const auto enc = eventlog::encode_trace(t, fx.log.vocab, fx.log.max_len);
      if (fx.clf.predict(enc.m).probability > cfg.threshold_p) {
        positive = &t;
        break;
      }
    }
    REQUIRE(positive != nullptr);
    CHECK_THROWS_AS(generate(*positive, fx.vae, fx.clf, fx.ldc, cfg, fx.log.vocab),
                    PreconditionError);
  }

  SUBCASE("zero-harvest run returns an empty list") {
    CfConfig stuck = cfg;
    stuck.max_iter = 1;
    stuck.alpha = 1e-12;
    // one step from the factual's own latent mean rarely crosses; if it
    // does, the invariants above still hold, so only check consistency
    CfResult res = generate(*factual, fx.vae, fx.clf, fx.ldc, stuck, fx.log.vocab);
    CHECK(res.iterations == 1);
    if (res.candidates.empty()) CHECK(res.accepted_before_dedup == 0);
  }
}

TEST_CASE("revise_plus matches generate when the dlc term is inert") {
  auto fx = Fixture::make(60, 11);
  CfConfig cfg;
  cfg.max_iter = 40;
  cfg.lambda_dlc = 0.0;
  cfg.lambda_dist = 0.02;

  const Trace* factual = fx.negative_factual(cfg);
  REQUIRE(factual != nullptr);

  // same model, lambda_dlc=0 and empty ldc: revise+ differs only in the
  // acceptance filter, so per-iteration losses coincide; with the weaker
  // filter it can only accept at least as many
  CfResult strict = generate(*factual, fx.vae, fx.clf, {}, cfg, fx.log.vocab);
  CfResult plain = generate_revise_plus(*factual, fx.vae, fx.clf, cfg, fx.log.vocab);
  CHECK(plain.accepted_before_dedup == strict.accepted_before_dedup);
  REQUIRE(plain.candidates.size() == strict.candidates.size());
  for (std::size_t i = 0; i < plain.candidates.size(); ++i) {
    CHECK(plain.candidates[i].loss.total ==
          doctest::Approx(strict.candidates[i].loss.total));
  }

  // with real ldc, the revised+ filter is stricter on identical trajectories
  CfResult filtered = generate(*factual, fx.vae, fx.clf, fx.ldc, cfg, fx.log.vocab);
  CHECK(filtered.accepted_before_dedup <= plain.accepted_before_dedup);
}

TEST_CASE("latent gradient matches finite differences through decode and loss") {
  auto fx = Fixture::make(40, 23);
  CfConfig cfg;
  cfg.lambda_dist = 0.05;
  cfg.lambda_dlc = 0.7;

  const auto x = eventlog::encode_trace(fx.log.traces[0], fx.log.vocab, fx.log.max_len);
  Vec z = fx.vae.encode(x.m).mu;

  const auto loss = [&]() {
    const Mat soft = fx.vae.decode(z);
    return cf_loss(soft, x, fx.clf, fx.ldc, cfg).total;
  };

  // analytic dz, mirroring the generate loop
  neural::VaeDecodeCache dc;
  const Mat soft = fx.vae.decode(z, &dc);
  neural::ClassifierCache cc;
  const auto pred = fx.clf.predict(soft, &cc);
  Mat dsoft(soft.rows, soft.cols);
  for (std::size_t i = 0; i < soft.size(); ++i) {
    const double d = x.m.d[i] - soft.d[i];
    const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    dsoft.d[i] += cfg.lambda_dist * (-cfg.beta * sign - 2.0 * d);
  }
  Mat dlc_grad(soft.rows, soft.cols);
  declare::soft_violation_total_grad(fx.ldc, soft, soft.rows, &dlc_grad);
  for (std::size_t i = 0; i < soft.size(); ++i) {
    dsoft.d[i] += cfg.lambda_dlc * dlc_grad.d[i];
  }
  if (1.0 - cfg.zeta() * pred.logit > 0.0) {
    fx.clf.predict_backward(cc, -cfg.zeta() * cfg.lambda_hinge, &dsoft, false);
  }
  Vec dz(z.size(), 0.0);
  fx.vae.decode_backward(dc, dsoft, &dz, false);

  CHECK(neural::max_rel_error_fd(loss, z.data(), z.size(), dz) < 1e-4);
}

TEST_CASE("stronger distance weight never loosens harvested proximity") {
  // median over seeds of the mean harvested dist term, non-increasing over
  // an increasing lambda_dist grid; seeds whose searches harvest nothing at
  // some grid point carry no signal and are skipped
  const std::vector<double> grid = {0.005, 0.02, 0.1};
  std::vector<std::vector<double>> per_seed;  // usable seeds x grid
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    test::SyntheticSpec spec;
    spec.traces = 120;
    spec.seed = 7;
    EventLog log = eventlog::append_eos(test::make_synthetic_log(spec));
    std::vector<Trace> desired;
    for (const auto& t : log.traces) {
      if (t.label == 1) desired.push_back(t);
    }
    auto cs = declare::derive_tdc_ldc(log.traces, desired, 1.0, 2);

    neural::TrainConfig vcfg;
    vcfg.epochs = 60;
    vcfg.batch_size = 8;
    vcfg.learning_rate = 2e-3;
    vcfg.hidden = 16;
    vcfg.latent = 6;
    vcfg.lambda_kl = 0.01;
    vcfg.seed = seed;
    auto vres = neural::train_vae(log, cs.tdc, vcfg);
    neural::TrainConfig ccfg;
    ccfg.epochs = 30;
    ccfg.batch_size = 8;
    ccfg.learning_rate = 3e-3;
    ccfg.hidden = 16;
    ccfg.seed = seed + 100;
    auto cres = neural::train_classifier(log, ccfg);

    const Trace* factual = nullptr;
    for (const auto& t : log.traces) {
      const auto enc = eventlog::encode_trace(t, log.vocab, log.max_len);
      if (cres.model.predict(enc.m).probability <= 0.5) {
        factual = &t;
        break;
      }
    }
    if (!factual) continue;

    std::vector<double> dists;
    bool usable = true;
    for (double ld : grid) {
      CfConfig cfg;
      cfg.max_iter = 300;
      cfg.alpha = 0.1;
      cfg.lambda_dist = ld;
      cfg.lambda_dlc = 1.0;
      auto res = generate(*factual, vres.model, cres.model, cs.ldc, cfg, log.vocab);
      if (res.candidates.empty()) {
        usable = false;
        break;
      }
      double mean = 0.0;
      for (const auto& c : res.candidates) mean += c.loss.dist;
      dists.push_back(mean / static_cast<double>(res.candidates.size()));
    }
    if (usable) per_seed.push_back(std::move(dists));
  }
  REQUIRE(per_seed.size() >= 2);

  for (std::size_t g = 1; g < grid.size(); ++g) {
    std::vector<double> prev, cur;
    for (const auto& s : per_seed) {
      prev.push_back(s[g - 1]);
      cur.push_back(s[g]);
    }
    std::sort(prev.begin(), prev.end());
    std::sort(cur.begin(), cur.end());
    const double med_prev = prev[prev.size() / 2];
    const double med_cur = cur[cur.size() / 2];
    CHECK(med_cur <= med_prev + 1e-9);
  }
}

TEST_CASE("results persistence round trip") {
  auto fx = Fixture::make(40, 31);
  CfConfig cfg;
  cfg.max_iter = 30;
  cfg.lambda_dist = 0.02;
  const Trace* factual = fx.negative_factual(cfg);
  REQUIRE(factual != nullptr);
  CfResult res = generate(*factual, fx.vae, fx.clf, fx.ldc, cfg, fx.log.vocab);

  std::vector<CfResult> results;
  results.push_back(std::move(res));
  const std::string text = serialize_results(results, fx.log.vocab, "revised+");
  std::string alg;
  const auto back = parse_results(text, fx.log.vocab, &alg);
  CHECK(alg == "revised+");
  REQUIRE(back.size() == 1);
  CHECK(back[0].factual.case_id == results[0].factual.case_id);
  CHECK(back[0].factual.activities == results[0].factual.activities);
  CHECK(back[0].iterations == results[0].iterations);
  REQUIRE(back[0].candidates.size() == results[0].candidates.size());
  for (std::size_t i = 0; i < back[0].candidates.size(); ++i) {
    CHECK(back[0].candidates[i].activities == results[0].candidates[i].activities);
  }
  // serialization is stable
  CHECK(serialize_results(back, fx.log.vocab, alg) == text);
}
