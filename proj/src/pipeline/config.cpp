#include "revised/pipeline/config.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "revised/errors.hpp"

namespace revised::pipeline {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Binder {
  std::map<std::string, std::function<void(const std::string&)>> setters;

  void str(const std::string& key, std::string* out) {
    setters[key] = [out](const std::string& v) { *out = v; };
  }
  void real(const std::string& key, double* out) {
    setters[key] = [out, key](const std::string& v) {
      try {
        std::size_t used = 0;
        *out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::logic_error&) {
        throw DataError("config: bad number for '" + key + "': " + v);
      }
    };
  }
  void integer(const std::string& key, int* out) {
    setters[key] = [out, key](const std::string& v) {
      try {
        *out = std::stoi(v);
      } catch (const std::logic_error&) {
        throw DataError("config: bad integer for '" + key + "': " + v);
      }
    };
  }
  void size(const std::string& key, std::size_t* out) {
    setters[key] = [out, key](const std::string& v) {
      try {
        long long x = std::stoll(v);
        if (x < 0) throw std::invalid_argument(v);
        *out = static_cast<std::size_t>(x);
      } catch (const std::logic_error&) {
        throw DataError("config: bad count for '" + key + "': " + v);
      }
    };
  }
  void u64(const std::string& key, std::uint64_t* out) {
    setters[key] = [out, key](const std::string& v) {
      try {
        *out = std::stoull(v);
      } catch (const std::logic_error&) {
        throw DataError("config: bad seed for '" + key + "': " + v);
      }
    };
  }
};

Binder make_binder(RunConfig& c) {
  Binder b;
  b.str("paths.log", &c.log_path);
  b.str("paths.work_dir", &c.work_dir);
  b.str("log_name", &c.log_name);
  b.str("preprocess.outcome_activity", &c.outcome_activity);
  b.real("preprocess.quantile", &c.quantile);
  b.real("preprocess.train_fraction", &c.train_fraction);
  b.real("mine.support", &c.support);
  b.integer("mine.max_card", &c.max_card);
  b.integer("mine.desired_label", &c.desired_label);
  b.size("vae.epochs", &c.vae.epochs);
  b.size("vae.batch_size", &c.vae.batch_size);
  b.real("vae.learning_rate", &c.vae.learning_rate);
  b.real("vae.clip_norm", &c.vae.clip_norm);
  b.real("vae.lambda_nll", &c.vae.lambda_nll);
  b.real("vae.lambda_kl", &c.vae.lambda_kl);
  b.real("vae.lambda_dtc", &c.vae.lambda_dtc);
  b.size("vae.hidden", &c.vae.hidden);
  b.size("vae.latent", &c.vae.latent);
  b.size("clf.epochs", &c.clf.epochs);
  b.size("clf.batch_size", &c.clf.batch_size);
  b.real("clf.learning_rate", &c.clf.learning_rate);
  b.real("clf.clip_norm", &c.clf.clip_norm);
  b.size("clf.hidden", &c.clf.hidden);
  b.real("clf.threshold", &c.clf_threshold);
  b.real("cf.lambda_hinge", &c.cfg_cf.lambda_hinge);
  b.real("cf.lambda_dist", &c.cfg_cf.lambda_dist);
  b.real("cf.lambda_dlc", &c.cfg_cf.lambda_dlc);
  b.real("cf.beta", &c.cfg_cf.beta);
  b.real("cf.alpha", &c.cfg_cf.alpha);
  b.real("cf.threshold_p", &c.cfg_cf.threshold_p);
  b.size("cf.max_iter", &c.cfg_cf.max_iter);
  b.size("metrics.knn", &c.knn);
  b.u64("seed", &c.seed);
  b.size("workers", &c.workers);
  return b;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  Binder b = make_binder(c);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw DataError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    auto it = b.setters.find(key);
    if (it == b.setters.end()) {
      throw DataError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                      "'");
    }
    it->second(value);
  }
  if (c.log_name.empty() && !c.log_path.empty()) {
    c.log_name = std::filesystem::path(c.log_path).stem().string();
  }
  c.cfg_cf.desired_label = c.desired_label;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

void RunConfig::validate() const {
  if (work_dir.empty()) throw DataError("config: paths.work_dir is required");
  if (!(quantile > 0.0 && quantile <= 1.0)) throw DataError("config: quantile must be in (0,1]");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DataError("config: train_fraction must be in (0,1)");
  }
  if (desired_label != 0 && desired_label != 1) {
    throw DataError("config: desired_label must be 0 or 1");
  }
  cfg_cf.validate();
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os.precision(17);
  os << "paths.log=" << log_path << "\nlog_name=" << log_name
     << "\npreprocess.outcome_activity=" << outcome_activity
     << "\npreprocess.quantile=" << quantile
     << "\npreprocess.train_fraction=" << train_fraction << "\nmine.support=" << support
     << "\nmine.max_card=" << max_card << "\nmine.desired_label=" << desired_label
     << "\nvae.epochs=" << vae.epochs << "\nvae.batch_size=" << vae.batch_size
     << "\nvae.learning_rate=" << vae.learning_rate << "\nvae.clip_norm=" << vae.clip_norm
     << "\nvae.lambda_nll=" << vae.lambda_nll << "\nvae.lambda_kl=" << vae.lambda_kl
     << "\nvae.lambda_dtc=" << vae.lambda_dtc << "\nvae.hidden=" << vae.hidden
     << "\nvae.latent=" << vae.latent << "\nclf.epochs=" << clf.epochs
     << "\nclf.batch_size=" << clf.batch_size << "\nclf.learning_rate=" << clf.learning_rate
     << "\nclf.clip_norm=" << clf.clip_norm << "\nclf.hidden=" << clf.hidden
     << "\nclf.threshold=" << clf_threshold << "\ncf.lambda_hinge=" << cfg_cf.lambda_hinge
     << "\ncf.lambda_dist=" << cfg_cf.lambda_dist << "\ncf.lambda_dlc=" << cfg_cf.lambda_dlc
     << "\ncf.beta=" << cfg_cf.beta << "\ncf.alpha=" << cfg_cf.alpha
     << "\ncf.threshold_p=" << cfg_cf.threshold_p << "\ncf.max_iter=" << cfg_cf.max_iter
     << "\nmetrics.knn=" << knn << "\nseed=" << seed << "\n";
  return os.str();
}

}  // namespace revised::pipeline
