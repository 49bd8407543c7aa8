// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tstf::model {

enum class Variant { tstf, space_time_only };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view s);

/// Shape hyperparameters. Derived sizes: N = H*W / patch^2 patches per frame,
/// d_h = D / heads, d' = D / C channel-token width.
struct ModelConfig {
  int layers = 2;
  int dim = 20;
  int heads = 5;
  int channels = 5;
  int time_steps = 8;
  int patch = 4;
  int height = 16;
  int width = 16;
  Variant variant = Variant::tstf;
  /// Residual + pre-LN around every submodule instead of the literal
  /// z' = LN(FA(TA(SA(z) + z))) composition.
  bool pre_ln = false;

  int patches_per_frame() const { return (height / patch) * (width / patch); }
  int head_dim() const { return dim / heads; }
  int channel_dim() const { return dim / channels; }
  int patch_tokens() const { return time_steps * patches_per_frame(); }
  int sequence_length() const { return patch_tokens() + 1; }
  int patch_features() const { return channels * patch * patch; }
  bool has_feature_attention() const { return variant == Variant::tstf; }
  /// LayerNorms per encoder block, excluding the cls-routing norm.
  int block_norms() const { return pre_ln ? (has_feature_attention() ? 3 : 2) : 1; }

  /// Throws ConfigError when any invariant fails.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

/// Named presets: "desk" (L=2), "desk-4" (L=4), "gradcheck", "tstf-6",
/// "tstf-8", "timesformer-12". The last three are the full-scale shapes
/// (D=155, T=500) and are only meant for parameter accounting.
ModelConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// Batch size the full-scale presets were trained with; 0 for desk presets.
int preset_batch_size(std::string_view name);

std::string to_json(const ModelConfig& config);
/// Parses a JSON object; missing keys keep their defaults, unknown keys are
/// rejected with ConfigError. The result is validated.
ModelConfig config_from_json(std::string_view text);

}  // namespace tstf::model
