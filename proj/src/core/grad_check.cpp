// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/core/grad_check.hpp"

#include <cmath>
#include <sstream>

namespace tstf {

GradCheckReport grad_check(const std::function<Tensor(Tape&)>& loss_fn, std::span<NamedTensor> params, double h,
                           double tol) {
  for (NamedTensor& p : params) p.tensor.zero_grad();
  {
    Tape tape;
    Tensor loss = loss_fn(tape);
    tape.backward(loss);
  }

  GradCheckReport report;
  auto evaluate = [&loss_fn] {
    Tape tape = Tape::inference();
    return loss_fn(tape).item();
  };
  for (NamedTensor& p : params) {
    Vector& values = p.tensor.mutable_data();
    const Vector& grad = p.tensor.grad();
    for (Index i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + h;
      const double up = evaluate();
      values[i] = saved - h;
      const double down = evaluate();
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = grad.size() ? grad[i] : 0.0;
      const double err = std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
      ++report.checked;
      if (err > report.worst_error || report.worst_index < 0) {
        report.worst_error = err;
        report.worst_param = p.name;
        report.worst_index = i;
        report.worst_analytic = analytic;
        report.worst_numeric = numeric;
      }
    }
  }
  report.passed = report.worst_error < tol;
  return report;
}

std::string describe(const GradCheckReport& r) {
  std::ostringstream os;
  os << (r.passed ? "passed" : "FAILED") << ": " << r.checked << " elements, worst rel. error " << r.worst_error;
  if (r.worst_index >= 0) {
    os << " at " << r.worst_param << "[" << r.worst_index << "] (analytic " << r.worst_analytic << ", numeric "
       << r.worst_numeric << ")";
  }
  return os.str();
}

}  // namespace tstf
