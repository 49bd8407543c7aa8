// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/train/adamw.hpp"

#include "tstf/core/errors.hpp"

#include <cmath>

namespace tstf::train {

void AdamWConfig::validate() const {
  if (!(lr > 0.0)) throw ConfigError("lr must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("betas must lie in [0, 1)");
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  if (!(weight_decay >= 0.0)) throw ConfigError("weight_decay must be >= 0");
}

AdamW::AdamW(std::vector<Tensor> params, AdamWConfig config) : params_(std::move(params)), config_(config) {
  config_.validate();
  for (const Tensor& p : params_) {
    if (!p.requires_grad()) throw ContractError("AdamW manages only tensors that require grad");
    m_.push_back(Vector::Zero(p.size()));
    v_.push_back(Vector::Zero(p.size()));
  }
}

void AdamW::step() {
  ++t_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  const double shrink = 1.0 - config_.lr * config_.weight_decay;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Vector& theta = params_[i].mutable_data();
    const Vector& g = params_[i].grad();
    if (g.size() != theta.size()) throw ContractError("gradient and parameter sizes differ");
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * g;
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * g.cwiseProduct(g);
    theta *= shrink;
    theta.array() -= config_.lr * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + config_.eps);
  }
}

void AdamW::zero_grad() const {
  for (const Tensor& p : params_) p.zero_grad();
}

}  // namespace tstf::train
