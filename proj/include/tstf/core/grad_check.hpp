// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tstf/core/tensor.hpp"

#include <functional>
#include <span>
#include <string>

namespace tstf {

struct GradCheckReport {
  bool passed = true;
  std::size_t checked = 0;
  double worst_error = 0.0;
  std::string worst_param;
  Index worst_index = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

/// Compares tape gradients against central differences for every element of
/// every parameter. Error metric: |analytic - numeric| / max(1, |analytic|).
///
/// `loss_fn` must build the loss from the current parameter values on the tape it
/// is handed; it is invoked once on a recording tape and twice per element on
/// inference tapes. Parameter grads are zeroed first and hold the analytic
/// gradient on return.
GradCheckReport grad_check(const std::function<Tensor(Tape&)>& loss_fn, std::span<NamedTensor> params,
                           double h = 1e-5, double tol = 1e-4);

std::string describe(const GradCheckReport& report);

}  // namespace tstf
