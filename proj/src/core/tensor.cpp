// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/core/tensor.hpp"

#include "tstf/core/errors.hpp"

#include <sstream>

namespace tstf {

Index element_count(const Shape& shape) {
  Index n = 1;
  for (Index d : shape) n *= d;
  return n;
}

std::string to_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ']';
  return os.str();
}

Tensor::Tensor(Shape shape, Vector data, bool requires_grad) : node_(std::make_shared<detail::TensorNode>()) {
  for (Index d : shape) {
    if (d <= 0) throw DimensionError("tensor dims must be positive, got " + to_string(shape));
  }
  if (element_count(shape) != data.size()) {
    throw DimensionError("shape " + to_string(shape) + " does not hold " + std::to_string(data.size()) +
                         " elements");
  }
  node_->shape = std::move(shape);
  node_->data = std::move(data);
  node_->requires_grad = requires_grad;
  if (requires_grad) node_->grad = Vector::Zero(node_->data.size());
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return full(std::move(shape), 0.0, requires_grad); }

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  const Index n = element_count(shape);
  return Tensor(std::move(shape), Vector::Constant(n, value), requires_grad);
}

Tensor Tensor::from(Shape shape, std::initializer_list<double> values, bool requires_grad) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return Tensor(std::move(shape), std::move(v), requires_grad);
}

Tensor Tensor::scalar(double value, bool requires_grad) { return full({1}, value, requires_grad); }

Index Tensor::dim(Index axis) const {
  const Index r = rank();
  if (axis < 0) axis += r;
  if (axis < 0 || axis >= r) {
    throw DimensionError("axis " + std::to_string(axis) + " out of range for shape " + to_string(shape()));
  }
  return node_->shape[static_cast<std::size_t>(axis)];
}

double Tensor::item() const {
  if (size() != 1) throw ContractError("item() on tensor of shape " + to_string(shape()));
  return node_->data[0];
}

void Tensor::zero_grad() const {
  if (node_->requires_grad) node_->grad.setZero();
}

Tensor Tensor::clone() const { return Tensor(node_->shape, node_->data, false); }

ConstMatrixMap Tensor::matrix(Index rows, Index cols) const {
  if (rows * cols != size()) {
    throw DimensionError("cannot view " + to_string(shape()) + " as " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  return ConstMatrixMap(node_->data.data(), rows, cols);
}

bool Tape::needs_grad(std::initializer_list<const Tensor*> inputs) const {
  if (!recording_) return false;
  for (const Tensor* t : inputs) {
    if (t != nullptr && t->requires_grad()) return true;
  }
  return false;
}

Tensor Tape::emit(Shape shape, Vector data, bool track, BackwardFn backward, const char* op_name) {
  if (!data.allFinite()) throw NumericError(std::string(op_name) + " produced a non-finite value");
  Tensor out(std::move(shape), std::move(data), track);
  if (track) records_.push_back({out, std::move(backward)});
  return out;
}

void Tape::backward(const Tensor& loss) {
  if (!loss.defined() || loss.size() != 1) {
    throw ContractError("backward needs a scalar loss, got " + (loss.defined() ? to_string(loss.shape()) : "[]"));
  }
  if (!loss.requires_grad()) return;
  for (Record& r : records_) r.output.zero_grad();
  loss.mutable_grad()[0] += 1.0;
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    const Vector& g = it->output.grad();
    if (g.isZero(0.0)) continue;
    it->backward(g);
  }
}

}  // namespace tstf
