// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/tensor.hpp"

#include <vector>

namespace tstf::train {

struct AdamWConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;

  /// Throws ConfigError unless lr > 0, 0 <= beta < 1, eps > 0, decay >= 0.
  void validate() const;
};

/// AdamW with decoupled weight decay. One step, with t counted from 1:
///
///   theta <- theta * (1 - lr * lambda)
///   m <- beta1 m + (1 - beta1) g,      v <- beta2 v + (1 - beta2) g^2
///   theta <- theta - lr * (m / (1 - beta1^t)) / (sqrt(v / (1 - beta2^t)) + eps)
///
/// Moments live in the optimizer; gradients are read from the tensors.
class AdamW {
 public:
  AdamW(std::vector<Tensor> params, AdamWConfig config);

  void step();
  /// Clears the gradient buffers of every managed tensor.
  void zero_grad() const;

  long steps() const noexcept { return t_; }
  const AdamWConfig& config() const noexcept { return config_; }

 private:
  std::vector<Tensor> params_;
  std::vector<Vector> m_;
  std::vector<Vector> v_;
  AdamWConfig config_;
  long t_ = 0;
};

}  // namespace tstf::train
