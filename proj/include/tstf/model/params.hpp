// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/tensor.hpp"
#include "tstf/model/config.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tstf::model {

/// Projections of one attention scope, all stored in x * W orientation
/// ([in, out]). Width is D for the spatial, temporal and cls scopes and d'
/// for the feature scope.
struct AttentionParams {
  Tensor wq, bq, wk, bk, wv, bv, wo, bo;
};

struct LayerParams {
  AttentionParams spatial;
  AttentionParams temporal;
  AttentionParams feature;  // left undefined for the space-time-only variant
  std::vector<Tensor> norm_gamma;  // block_norms() entries of [D]
  std::vector<Tensor> norm_beta;
  AttentionParams cls;
  Tensor cls_gamma, cls_beta;
};

struct ModelParams {
  Tensor embed_w;  // [C * patch^2, D]
  Tensor embed_b;  // [D]
  Tensor pos;      // [T * N + 1, D]
  Tensor cls;      // [D]
  std::vector<LayerParams> layers;
  Tensor head_w1;  // [D, 4D]
  Tensor head_b1;  // [4D]
  Tensor head_w2;  // [4D, 1]
  Tensor head_b2;  // [1]

  /// Every parameter with a stable dotted name ("layers.0.spatial.wq"), in a
  /// fixed order. The tensors share storage with this struct.
  std::vector<NamedTensor> named() const;
};

/// Weights ~ Normal(0, 1/sqrt(fan_in)), biases 0, LayerNorm gain 1 and shift 0,
/// positional table and cls seed ~ Normal(0, 0.02). All tensors require grad.
ModelParams init_params(const ModelConfig& config, std::uint64_t seed);

/// Expected shape of every named parameter, in named() order.
std::vector<std::pair<std::string, Shape>> parameter_shapes(const ModelConfig& config);

struct ParamGroup {
  std::string name;
  std::int64_t count = 0;
};

struct ParamCount {
  std::int64_t total = 0;
  std::vector<ParamGroup> groups;  // embedding, positional, cls, per-layer groups, head
  /// Per-layer attention, LayerNorm and cls-routing parameters, summed over layers.
  std::int64_t layer_local() const;
};

/// Closed-form count from the shape algebra, grouped for reporting.
ParamCount count_params(const ModelConfig& config);

/// Saves parameters in the checkpoint container and the config as JSON at
/// `<path>.json`.
void save_model(const std::filesystem::path& path, const ModelConfig& config, const ModelParams& params);

/// Loads a checkpoint whose entries must match `config` exactly: same names,
/// same shapes, nothing missing or extra. Throws CheckpointError otherwise.
ModelParams load_params(const std::filesystem::path& path, const ModelConfig& config);

/// Reads `<path>.json` next to a checkpoint.
ModelConfig load_model_config(const std::filesystem::path& path);

}  // namespace tstf::model
