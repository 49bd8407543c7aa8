// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/tensor.hpp"
#include "tstf/model/config.hpp"
#include "tstf/model/params.hpp"

#include <span>

// Forward pass of the tri-dimensional attention encoder. Shapes use
// B batch, T time steps, N patches per frame, D embedding width.
namespace tstf::model {

/// Multi-head scaled dot-product self-attention along axis 1 of x [G, S, W],
/// followed by the output projection. Scale is 1/sqrt(W / heads). When
/// `weights` is given it receives the attention matrix [G * heads, S, S].
Tensor self_attention(Tape& tape, const Tensor& x, const AttentionParams& p, int heads, Tensor* weights = nullptr);

/// [B, T, C, H, W] -> [B, T*N + 1, D]. Non-overlapping patch x patch blocks
/// are flattened channel-major (c, row, col), mapped by embed_w/embed_b, and
/// prefixed by the cls seed; the positional table is added to all T*N + 1
/// tokens. Patch n of a frame is block (n / (W/patch), n % (W/patch)).
Tensor embed_patches(Tape& tape, const ModelConfig& config, const ModelParams& params, const Tensor& x);

// The three scopes take and return patch tokens [B, T*N, D] (cls excluded).

/// Attention among the N patches of each frame.
Tensor spatial_attention(Tape& tape, const ModelConfig& config, const LayerParams& layer, const Tensor& z,
                         Tensor* weights = nullptr);
/// Attention across the T frames at each patch position; unmasked.
Tensor temporal_attention(Tape& tape, const ModelConfig& config, const LayerParams& layer, const Tensor& z,
                          Tensor* weights = nullptr);
/// Single-head attention among the C channel tokens (width d') of each token.
Tensor feature_attention(Tape& tape, const ModelConfig& config, const LayerParams& layer, const Tensor& z,
                         Tensor* weights = nullptr);

/// Cls update: single-head cross-attention with the cls token [B, 1, D] as
/// query over the block's patch outputs, then LN(cls + attended).
Tensor route_cls(Tape& tape, const ModelConfig& config, const LayerParams& layer, const Tensor& cls,
                 const Tensor& patches);

/// One encoder layer on the full sequence [B, T*N + 1, D].
Tensor encoder_block(Tape& tape, const ModelConfig& config, const LayerParams& layer, const Tensor& z);

/// Win probability of player 1 for each batch element: [B, T, C, H, W] -> [B].
Tensor forward(Tape& tape, const ModelConfig& config, const ModelParams& params, const Tensor& x);

/// Stacks equally shaped constant samples along a new leading axis.
Tensor stack(std::span<const Tensor> samples);

}  // namespace tstf::model
