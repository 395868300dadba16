#include "revised/neural/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "revised/hash.hpp"

namespace revised::neural {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr char kMagic[8] = {'R', 'V', 'S', 'D', 'M', 'L', '0', '1'};

void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

void write_doubles(std::ostream& out, const Vec& v) {
  for (double d : v) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(b, 8);
  }
}

void read_doubles(std::istream& in, Vec& v) {
  for (double& d : v) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    d = std::bit_cast<double>(bits);
  }
}

ordered_json tensor_directory(const ParamStore& store) {
  ordered_json dir = ordered_json::array();
  for (std::size_t i = 0; i < store.count(); ++i) {
    const Param& p = store.at(i);
    ordered_json t;
    t["name"] = p.name;
    t["shape"] = p.shape;
    dir.push_back(std::move(t));
  }
  return dir;
}

void write_model(const std::string& path, const ordered_json& header,
                 const ParamStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path);
  out.write(kMagic, 8);
  const std::string h = header.dump();
  write_u32(out, static_cast<std::uint32_t>(h.size()));
  out.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (std::size_t i = 0; i < store.count(); ++i) write_doubles(out, store.at(i).value);
  if (!out) throw IoError("failed writing model file: " + path);
}

ordered_json read_header(std::istream& in, const std::string& path) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw ArtifactError("not a model file: " + path);
  }
  const std::uint32_t len = read_u32(in);
  std::string h(len, '\0');
  in.read(h.data(), len);
  if (!in) throw ArtifactError("truncated model header: " + path);
  ordered_json header;
  try {
    header = ordered_json::parse(h);
  } catch (const nlohmann::json::exception& e) {
    throw ArtifactError(std::string("corrupt model header: ") + e.what());
  }
  if (header.value("format_version", -1) != kModelFormatVersion) {
    throw ArtifactError("unsupported model format version in " + path);
  }
  return header;
}

void read_tensors(std::istream& in, const ordered_json& header, ParamStore& store,
                  const std::string& path) {
  const auto& dir = header.at("tensors");
  if (dir.size() != store.count()) {
    throw ArtifactError("tensor directory size mismatch in " + path);
  }
  for (std::size_t i = 0; i < store.count(); ++i) {
    Param& p = store.at(i);
    const auto& entry = dir.at(i);
    if (entry.at("name").get<std::string>() != p.name ||
        entry.at("shape").get<std::vector<std::size_t>>() != p.shape) {
      throw ArtifactError("tensor layout mismatch for '" + p.name + "' in " + path);
    }
    read_doubles(in, p.value);
  }
  if (!in) throw ArtifactError("truncated model tensors: " + path);
}

}  // namespace

void save_vae(const VaeModel& model, const std::string& path) {
  ordered_json h;
  h["format_version"] = kModelFormatVersion;
  h["kind"] = "vae";
  h["vocab_hash"] = hex64(model.vocab_hash());
  h["dims"] = {{"input", model.dims().input},
               {"hidden", model.dims().hidden},
               {"latent", model.dims().latent},
               {"max_len", model.dims().max_len}};
  h["lambdas"] = {{"nll", model.lambdas().nll},
                  {"kl", model.lambdas().kl},
                  {"dtc", model.lambdas().dtc}};
  h["seed"] = model.seed();
  h["tensors"] = tensor_directory(model.store());
  write_model(path, h, model.store());
}

VaeModel load_vae(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  const ordered_json h = read_header(in, path);
  if (h.at("kind").get<std::string>() != "vae") {
    throw ArtifactError("expected a vae model in " + path);
  }
  VaeDims dims;
  dims.input = h.at("dims").at("input").get<std::size_t>();
  dims.hidden = h.at("dims").at("hidden").get<std::size_t>();
  dims.latent = h.at("dims").at("latent").get<std::size_t>();
  dims.max_len = h.at("dims").at("max_len").get<std::size_t>();
  VaeLambdas lambdas{h.at("lambdas").at("nll").get<double>(),
                     h.at("lambdas").at("kl").get<double>(),
                     h.at("lambdas").at("dtc").get<double>()};
  VaeModel model(dims, lambdas, h.at("seed").get<std::uint64_t>(),
                 std::stoull(h.at("vocab_hash").get<std::string>(), nullptr, 16),
                 /*random_init=*/false);
  read_tensors(in, h, model.store(), path);
  return model;
}

void save_classifier(const ClassifierModel& model, const std::string& path) {
  ordered_json h;
  h["format_version"] = kModelFormatVersion;
  h["kind"] = "classifier";
  h["vocab_hash"] = hex64(model.vocab_hash());
  h["dims"] = {{"input", model.dims().input},
               {"hidden", model.dims().hidden},
               {"max_len", model.dims().max_len}};
  h["threshold"] = model.threshold();
  h["seed"] = model.seed();
  h["tensors"] = tensor_directory(model.store());
  write_model(path, h, model.store());
}

ClassifierModel load_classifier(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  const ordered_json h = read_header(in, path);
  if (h.at("kind").get<std::string>() != "classifier") {
    throw ArtifactError("expected a classifier model in " + path);
  }
  ClassifierDims dims;
  dims.input = h.at("dims").at("input").get<std::size_t>();
  dims.hidden = h.at("dims").at("hidden").get<std::size_t>();
  dims.max_len = h.at("dims").at("max_len").get<std::size_t>();
  ClassifierModel model(dims, h.at("seed").get<std::uint64_t>(),
                        std::stoull(h.at("vocab_hash").get<std::string>(), nullptr, 16),
                        h.at("threshold").get<double>(), /*random_init=*/false);
  read_tensors(in, h, model.store(), path);
  return model;
}

std::string model_kind(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  return read_header(in, path).at("kind").get<std::string>();
}

void require_vocab_hash(std::uint64_t model_hash, std::uint64_t log_hash,
                        const std::string& what) {
  if (model_hash != log_hash) {
    throw ArtifactError(what + ": vocabulary hash mismatch (model " + hex64(model_hash) +
                        ", log " + hex64(log_hash) + ")");
  }
}

}  // namespace revised::neural
