// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/model/tstf.hpp"

#include "tstf/core/errors.hpp"
#include "tstf/core/ops.hpp"

#include <cmath>

namespace tstf::model {
namespace {

// [G*S, W] projections regrouped to per-head sequences [G*h, S, W/h].
Tensor split_heads(Tape& tape, const Tensor& t, Index g, Index s, Index heads) {
  const Index w = t.dim(-1) / heads;
  if (heads == 1) return reshape(tape, t, {g, s, w});
  return reshape(tape, permute(tape, reshape(tape, t, {g, s, heads, w}), {0, 2, 1, 3}), {g * heads, s, w});
}

Tensor merge_heads(Tape& tape, const Tensor& t, Index g, Index s, Index heads) {
  const Index w = t.dim(-1);
  if (heads == 1) return reshape(tape, t, {g * s, w});
  return reshape(tape, permute(tape, reshape(tape, t, {g, heads, s, w}), {0, 2, 1, 3}), {g * s, heads * w});
}

}  // namespace

Tensor self_attention(Tape& tape, const Tensor& x, const AttentionParams& p, int heads, Tensor* weights) {
  if (x.rank() != 3) throw DimensionError("self_attention expects [G, S, W], got " + to_string(x.shape()));
  const Index g = x.dim(0);
  const Index s = x.dim(1);
  const Index w = x.dim(2);
  if (w % heads != 0) throw DimensionError("attention width not divisible by heads");
  const Tensor flat = reshape(tape, x, {g * s, w});
  const Tensor q = split_heads(tape, linear(tape, flat, p.wq, p.bq), g, s, heads);
  const Tensor k = split_heads(tape, linear(tape, flat, p.wk, p.bk), g, s, heads);
  const Tensor v = split_heads(tape, linear(tape, flat, p.wv, p.bv), g, s, heads);
  const double scale_factor = 1.0 / std::sqrt(static_cast<double>(w / heads));
  const Tensor a = softmax(tape, scale(tape, bmm(tape, q, k, true), scale_factor), 2);
  if (weights) *weights = a;
  const Tensor o = merge_heads(tape, bmm(tape, a, v), g, s, heads);
  return reshape(tape, linear(tape, o, p.wo, p.bo), {g, s, w});
}

Tensor embed_patches(Tape& tape, const ModelConfig& c, const ModelParams& params, const Tensor& x) {
  if (x.rank() != 5 || x.dim(1) != c.time_steps || x.dim(2) != c.channels || x.dim(3) != c.height ||
      x.dim(4) != c.width) {
    throw ConfigError("input " + to_string(x.shape()) + " does not match config [B," + std::to_string(c.time_steps) +
                      "," + std::to_string(c.channels) + "," + std::to_string(c.height) + "," +
                      std::to_string(c.width) + "]");
  }
  const Index b = x.dim(0);
  const Index p = c.patch;
  const Index hp = c.height / p;
  const Index wp = c.width / p;
  // [B,T,C,hp,p,wp,p] -> [B,T,hp,wp,C,p,p]
  const Tensor blocks = permute(tape, reshape(tape, x, {b, c.time_steps, c.channels, hp, p, wp, p}), {0, 1, 3, 5, 2, 4, 6});
  const Tensor flat = reshape(tape, blocks, {b * c.patch_tokens(), c.patch_features()});
  const Tensor tokens = reshape(tape, linear(tape, flat, params.embed_w, params.embed_b), {b, c.patch_tokens(), c.dim});
  const Tensor seed = reshape(tape, params.cls, {1, 1, c.dim});
  const std::vector<Tensor> seeds(static_cast<std::size_t>(b), seed);
  const Tensor cls = b == 1 ? seed : concat(tape, seeds, 0);
  const Tensor parts[] = {cls, tokens};
  return add(tape, concat(tape, parts, 1), params.pos);
}

Tensor spatial_attention(Tape& tape, const ModelConfig& c, const LayerParams& layer, const Tensor& z, Tensor* weights) {
  const Index b = z.dim(0);
  const Index n = c.patches_per_frame();
  const Tensor frames = reshape(tape, z, {b * c.time_steps, n, c.dim});
  return reshape(tape, self_attention(tape, frames, layer.spatial, c.heads, weights), {b, c.patch_tokens(), c.dim});
}

Tensor temporal_attention(Tape& tape, const ModelConfig& c, const LayerParams& layer, const Tensor& z,
                          Tensor* weights) {
  const Index b = z.dim(0);
  const Index t = c.time_steps;
  const Index n = c.patches_per_frame();
  const Tensor tracks =
      reshape(tape, permute(tape, reshape(tape, z, {b, t, n, c.dim}), {0, 2, 1, 3}), {b * n, t, c.dim});
  const Tensor out = self_attention(tape, tracks, layer.temporal, c.heads, weights);
  return reshape(tape, permute(tape, reshape(tape, out, {b, n, t, c.dim}), {0, 2, 1, 3}), {b, t * n, c.dim});
}

Tensor feature_attention(Tape& tape, const ModelConfig& c, const LayerParams& layer, const Tensor& z,
                         Tensor* weights) {
  if (!c.has_feature_attention()) throw ConfigError("feature attention is disabled for this variant");
  const Index tokens = z.dim(0) * z.dim(1);
  const Tensor grouped = reshape(tape, z, {tokens, c.channels, c.channel_dim()});
  return reshape(tape, self_attention(tape, grouped, layer.feature, 1, weights), z.shape());
}

Tensor route_cls(Tape& tape, const ModelConfig& c, const LayerParams& layer, const Tensor& cls,
                 const Tensor& patches) {
  const AttentionParams& p = layer.cls;
  const Tensor q = linear(tape, cls, p.wq, p.bq);
  const Tensor k = linear(tape, patches, p.wk, p.bk);
  const Tensor v = linear(tape, patches, p.wv, p.bv);
  const Tensor a = softmax(tape, scale(tape, bmm(tape, q, k, true), 1.0 / std::sqrt(static_cast<double>(c.dim))), 2);
  const Tensor o = linear(tape, bmm(tape, a, v), p.wo, p.bo);
  return layer_norm(tape, add(tape, cls, o), layer.cls_gamma, layer.cls_beta);
}

Tensor encoder_block(Tape& tape, const ModelConfig& c, const LayerParams& layer, const Tensor& z) {
  const Tensor cls = slice(tape, z, 1, 0, 1);
  Tensor x = slice(tape, z, 1, 1, c.patch_tokens());
  if (c.pre_ln) {
    auto ln = [&](const Tensor& t, std::size_t k) { return layer_norm(tape, t, layer.norm_gamma[k], layer.norm_beta[k]); };
    x = add(tape, x, spatial_attention(tape, c, layer, ln(x, 0)));
    x = add(tape, x, temporal_attention(tape, c, layer, ln(x, 1)));
    if (c.has_feature_attention()) x = add(tape, x, feature_attention(tape, c, layer, ln(x, 2)));
  } else {
    x = temporal_attention(tape, c, layer, add(tape, spatial_attention(tape, c, layer, x), x));
    if (c.has_feature_attention()) x = feature_attention(tape, c, layer, x);
    x = layer_norm(tape, x, layer.norm_gamma[0], layer.norm_beta[0]);
  }
  const Tensor parts[] = {route_cls(tape, c, layer, cls, x), x};
  return concat(tape, parts, 1);
}

Tensor forward(Tape& tape, const ModelConfig& c, const ModelParams& params, const Tensor& x) {
  if (params.layers.size() != static_cast<std::size_t>(c.layers)) {
    throw ConfigError("parameter set has " + std::to_string(params.layers.size()) + " layers, config needs " +
                      std::to_string(c.layers));
  }
  Tensor z = embed_patches(tape, c, params, x);
  for (const LayerParams& layer : params.layers) z = encoder_block(tape, c, layer, z);
  const Index b = x.dim(0);
  const Tensor cls = reshape(tape, slice(tape, z, 1, 0, 1), {b, c.dim});
  const Tensor hidden = gelu(tape, linear(tape, cls, params.head_w1, params.head_b1));
  return reshape(tape, sigmoid(tape, linear(tape, hidden, params.head_w2, params.head_b2)), {b});
}

Tensor stack(std::span<const Tensor> samples) {
  if (samples.empty()) throw ContractError("cannot stack zero samples");
  const Shape& inner = samples.front().shape();
  const Index n = samples.front().size();
  Vector data(n * static_cast<Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].shape() != inner) throw DimensionError("stack: sample shapes differ");
    data.segment(static_cast<Index>(i) * n, n) = samples[i].data();
  }
  Shape shape{static_cast<Index>(samples.size())};
  shape.insert(shape.end(), inner.begin(), inner.end());
  return Tensor(std::move(shape), std::move(data));
}

}  // namespace tstf::model
