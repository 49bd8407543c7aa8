// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/tensor.hpp"

#include <span>
#include <vector>

// Differentiable tensor operations. Every op takes the tape it records onto;
// on an inference tape (or with constant inputs) nothing is recorded.
namespace tstf {

inline constexpr double kLayerNormEpsilon = 1e-5;

/// [m,k] x [k,n] -> [m,n].
Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b);

/// Batched product over matching leading dims: [..., m, k] x [..., k, n].
/// With transpose_b the right operand is read as [..., n, k].
Tensor bmm(Tape& tape, const Tensor& a, const Tensor& b, bool transpose_b = false);

/// x[..., in] * w[in, out] + bias[out]; bias may be undefined.
Tensor linear(Tape& tape, const Tensor& x, const Tensor& w, const Tensor& bias);

/// Elementwise sum. b may also have a shape equal to a trailing suffix of a's
/// shape, in which case it is broadcast over the leading axes.
Tensor add(Tape& tape, const Tensor& a, const Tensor& b);
Tensor mul(Tape& tape, const Tensor& a, const Tensor& b);
Tensor scale(Tape& tape, const Tensor& a, double factor);
Tensor sum(Tape& tape, const Tensor& a);
Tensor mean(Tape& tape, const Tensor& a);

/// Numerically stable softmax along `axis` (max-subtracted).
Tensor softmax(Tape& tape, const Tensor& x, Index axis);

/// Normalizes over the last axis: gamma * (x - mu) / sqrt(var + eps) + beta.
Tensor layer_norm(Tape& tape, const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  double eps = kLayerNormEpsilon);

/// tanh approximation: 0.5 x (1 + tanh(sqrt(2/pi) (x + 0.044715 x^3))).
Tensor gelu(Tape& tape, const Tensor& x);
Tensor sigmoid(Tape& tape, const Tensor& x);

Tensor reshape(Tape& tape, const Tensor& x, Shape shape);
/// out.shape[i] = x.shape[perm[i]]; materializes a contiguous copy.
Tensor permute(Tape& tape, const Tensor& x, std::span<const Index> perm);
Tensor permute(Tape& tape, const Tensor& x, std::initializer_list<Index> perm);
Tensor concat(Tape& tape, std::span<const Tensor> parts, Index axis);
Tensor slice(Tape& tape, const Tensor& x, Index axis, Index start, Index length);

/// Mean binary cross-entropy of probabilities p[M] against labels in {0,1}.
/// p is clamped to [1e-12, 1 - 1e-12] before the logarithms.
Tensor bce_loss(Tape& tape, const Tensor& p, std::span<const double> labels);

}  // namespace tstf
