// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/model/params.hpp"

#include "tstf/core/checkpoint.hpp"
#include "tstf/core/errors.hpp"
#include "tstf/core/rng.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace tstf::model {
namespace {

enum class Init { weight, zero, one, small };

struct Slot {
  std::string name;
  Tensor* tensor;
  Shape shape;
  Init init;
};

void attention_slots(std::vector<Slot>& out, const std::string& prefix, AttentionParams& a, Index width) {
  const Shape w{width, width};
  const Shape b{width};
  out.push_back({prefix + ".wq", &a.wq, w, Init::weight});
  out.push_back({prefix + ".bq", &a.bq, b, Init::zero});
  out.push_back({prefix + ".wk", &a.wk, w, Init::weight});
  out.push_back({prefix + ".bk", &a.bk, b, Init::zero});
  out.push_back({prefix + ".wv", &a.wv, w, Init::weight});
  out.push_back({prefix + ".bv", &a.bv, b, Init::zero});
  out.push_back({prefix + ".wo", &a.wo, w, Init::weight});
  out.push_back({prefix + ".bo", &a.bo, b, Init::zero});
}

// Single source of truth for names, shapes, order and initialization.
std::vector<Slot> slots(const ModelConfig& c, ModelParams& p) {
  c.validate();
  const Index d = c.dim;
  std::vector<Slot> out;
  out.push_back({"embed.w", &p.embed_w, {c.patch_features(), d}, Init::weight});
  out.push_back({"embed.b", &p.embed_b, {d}, Init::zero});
  out.push_back({"pos", &p.pos, {c.sequence_length(), d}, Init::small});
  out.push_back({"cls", &p.cls, {d}, Init::small});
  p.layers.resize(static_cast<std::size_t>(c.layers));
  for (int l = 0; l < c.layers; ++l) {
    LayerParams& L = p.layers[static_cast<std::size_t>(l)];
    const std::string pre = "layers." + std::to_string(l);
    attention_slots(out, pre + ".spatial", L.spatial, d);
    attention_slots(out, pre + ".temporal", L.temporal, d);
    if (c.has_feature_attention()) attention_slots(out, pre + ".feature", L.feature, c.channel_dim());
    L.norm_gamma.resize(static_cast<std::size_t>(c.block_norms()));
    L.norm_beta.resize(static_cast<std::size_t>(c.block_norms()));
    for (int k = 0; k < c.block_norms(); ++k) {
      out.push_back({pre + ".norm" + std::to_string(k) + ".gamma", &L.norm_gamma[k], {d}, Init::one});
      out.push_back({pre + ".norm" + std::to_string(k) + ".beta", &L.norm_beta[k], {d}, Init::zero});
    }
    attention_slots(out, pre + ".cls", L.cls, d);
    out.push_back({pre + ".cls_norm.gamma", &L.cls_gamma, {d}, Init::one});
    out.push_back({pre + ".cls_norm.beta", &L.cls_beta, {d}, Init::zero});
  }
  out.push_back({"head.w1", &p.head_w1, {d, 4 * d}, Init::weight});
  out.push_back({"head.b1", &p.head_b1, {4 * d}, Init::zero});
  out.push_back({"head.w2", &p.head_w2, {4 * d, 1}, Init::weight});
  out.push_back({"head.b2", &p.head_b2, {1}, Init::zero});
  return out;
}

std::filesystem::path config_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p += ".json";
  return p;
}

}  // namespace

std::vector<NamedTensor> ModelParams::named() const {
  std::vector<NamedTensor> out;
  auto attn = [&](const std::string& prefix, const AttentionParams& a) {
    for (const auto& [suffix, t] : {std::pair{".wq", &a.wq}, {".bq", &a.bq}, {".wk", &a.wk}, {".bk", &a.bk},
                                    {".wv", &a.wv}, {".bv", &a.bv}, {".wo", &a.wo}, {".bo", &a.bo}}) {
      out.push_back({prefix + suffix, *t});
    }
  };
  out.push_back({"embed.w", embed_w});
  out.push_back({"embed.b", embed_b});
  out.push_back({"pos", pos});
  out.push_back({"cls", cls});
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LayerParams& L = layers[l];
    const std::string pre = "layers." + std::to_string(l);
    attn(pre + ".spatial", L.spatial);
    attn(pre + ".temporal", L.temporal);
    if (L.feature.wq.defined()) attn(pre + ".feature", L.feature);
    for (std::size_t k = 0; k < L.norm_gamma.size(); ++k) {
      out.push_back({pre + ".norm" + std::to_string(k) + ".gamma", L.norm_gamma[k]});
      out.push_back({pre + ".norm" + std::to_string(k) + ".beta", L.norm_beta[k]});
    }
    attn(pre + ".cls", L.cls);
    out.push_back({pre + ".cls_norm.gamma", L.cls_gamma});
    out.push_back({pre + ".cls_norm.beta", L.cls_beta});
  }
  out.push_back({"head.w1", head_w1});
  out.push_back({"head.b1", head_b1});
  out.push_back({"head.w2", head_w2});
  out.push_back({"head.b2", head_b2});
  return out;
}

ModelParams init_params(const ModelConfig& config, std::uint64_t seed) {
  ModelParams p;
  Rng rng(seed);
  for (Slot& s : slots(config, p)) {
    Vector v(element_count(s.shape));
    switch (s.init) {
      case Init::weight: {
        const double sd = 1.0 / std::sqrt(static_cast<double>(s.shape.front()));
        for (Index i = 0; i < v.size(); ++i) v[i] = rng.normal(0.0, sd);
        break;
      }
      case Init::small:
        for (Index i = 0; i < v.size(); ++i) v[i] = rng.normal(0.0, 0.02);
        break;
      case Init::zero: v.setZero(); break;
      case Init::one: v.setOnes(); break;
    }
    *s.tensor = Tensor(s.shape, std::move(v), true);
  }
  return p;
}

std::vector<std::pair<std::string, Shape>> parameter_shapes(const ModelConfig& config) {
  ModelParams scratch;
  std::vector<std::pair<std::string, Shape>> out;
  for (const Slot& s : slots(config, scratch)) out.emplace_back(s.name, s.shape);
  return out;
}

std::int64_t ParamCount::layer_local() const {
  std::int64_t n = 0;
  for (const ParamGroup& g : groups) {
    if (g.name.rfind("layers.", 0) == 0) n += g.count;
  }
  return n;
}

ParamCount count_params(const ModelConfig& c) {
  c.validate();
  const std::int64_t d = c.dim;
  const std::int64_t dp = c.channel_dim();
  const std::int64_t L = c.layers;
  auto attention = [](std::int64_t w) { return 4 * (w * w + w); };
  ParamCount pc;
  pc.groups = {
      {"embedding", static_cast<std::int64_t>(c.patch_features()) * d + d},
      {"positional", static_cast<std::int64_t>(c.sequence_length()) * d},
      {"cls", d},
      {"layers.spatial", L * attention(d)},
      {"layers.temporal", L * attention(d)},
      {"layers.feature", c.has_feature_attention() ? L * attention(dp) : 0},
      {"layers.norm", L * c.block_norms() * 2 * d},
      {"layers.cls_routing", L * (attention(d) + 2 * d)},
      {"head", d * 4 * d + 4 * d + 4 * d + 1},
  };
  for (const ParamGroup& g : pc.groups) pc.total += g.count;
  return pc;
}

void save_model(const std::filesystem::path& path, const ModelConfig& config, const ModelParams& params) {
  const auto named = params.named();
  save_checkpoint(path, named);
  std::ofstream out(config_path(path), std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + config_path(path).string() + "'");
  out << to_json(config) << '\n';
}

ModelConfig load_model_config(const std::filesystem::path& path) {
  std::ifstream in(config_path(path), std::ios::binary);
  if (!in) throw IoError("cannot read '" + config_path(path).string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

ModelParams load_params(const std::filesystem::path& path, const ModelConfig& config) {
  std::map<std::string, Tensor> stored;
  for (NamedTensor& nt : load_checkpoint(path)) {
    if (!stored.emplace(nt.name, nt.tensor).second) throw CheckpointError("duplicate entry '" + nt.name + "'");
  }
  ModelParams p;
  const auto expected = slots(config, p);
  for (const Slot& s : expected) {
    auto it = stored.find(s.name);
    if (it == stored.end()) throw CheckpointError("checkpoint lacks parameter '" + s.name + "'");
    if (it->second.shape() != s.shape) {
      throw CheckpointError("parameter '" + s.name + "' has shape " + to_string(it->second.shape()) + ", config needs " +
                            to_string(s.shape));
    }
    *s.tensor = Tensor(s.shape, it->second.data(), true);
    stored.erase(it);
  }
  if (!stored.empty()) throw CheckpointError("checkpoint has unexpected parameter '" + stored.begin()->first + "'");
  return p;
}

}  // namespace tstf::model
