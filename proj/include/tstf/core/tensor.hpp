// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace tstf {

using Index = Eigen::Index;
using Shape = std::vector<Index>;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

Index element_count(const Shape& shape);
std::string to_string(const Shape& shape);

namespace detail {
struct TensorNode {
  Shape shape;
  Vector data;
  Vector grad;  // allocated (zeroed) iff requires_grad
  bool requires_grad = false;
};
}  // namespace detail

/// Dense row-major n-dimensional array of doubles.
///
/// Copies share storage (handle semantics), which is what lets the tape refer to
/// tensors that user code still holds. Data is treated as immutable once an op has
/// consumed it; mutable_data() exists for optimizers and finite-difference probes.
class Tensor {
 public:
  Tensor() = default;
  Tensor(Shape shape, Vector data, bool requires_grad = false);

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor from(Shape shape, std::initializer_list<double> values, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const noexcept { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  Index rank() const { return static_cast<Index>(node_->shape.size()); }
  /// Size of one axis; negative axes count from the back.
  Index dim(Index axis) const;
  Index size() const { return node_->data.size(); }

  const Vector& data() const { return node_->data; }
  Vector& mutable_data() { return node_->data; }
  double operator[](Index i) const { return node_->data[i]; }
  /// Value of a single-element tensor.
  double item() const;

  bool requires_grad() const noexcept { return node_ && node_->requires_grad; }
  const Vector& grad() const { return node_->grad; }
  // Gradient buffers are shared state of the handle, writable through const copies.
  Vector& mutable_grad() const { return node_->grad; }
  void zero_grad() const;

  /// Deep copy with no gradient participation.
  Tensor clone() const;
  bool same_storage(const Tensor& other) const noexcept { return node_ == other.node_; }

  ConstMatrixMap matrix(Index rows, Index cols) const;

 private:
  friend class Tape;
  std::shared_ptr<detail::TensorNode> node_;
};

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

/// Records differentiable operations in execution order for reverse-mode AD.
///
/// Backward visits the records in reverse order. Gradients of leaf tensors
/// accumulate across backward() calls; gradients of recorded intermediates are
/// reset at the start of each call, so calling backward twice on the same tape
/// adds the same leaf gradient twice. A Tape belongs to one thread.
class Tape {
 public:
  using BackwardFn = std::function<void(const Vector& output_grad)>;

  Tape() = default;
  /// A tape that records nothing; ops on it produce constants.
  static Tape inference() {
    Tape t;
    t.recording_ = false;
    return t;
  }

  bool recording() const noexcept { return recording_; }
  std::size_t size() const noexcept { return records_.size(); }

  /// True when an op over these inputs must be recorded.
  bool needs_grad(std::initializer_list<const Tensor*> inputs) const;

  /// Wraps op output; if `track` the output joins the graph with `backward`.
  Tensor emit(Shape shape, Vector data, bool track, BackwardFn backward, const char* op_name);

  /// Seeds d(loss)/d(loss) = 1 and propagates. loss must hold exactly one element.
  void backward(const Tensor& loss);

 private:
  struct Record {
    Tensor output;
    BackwardFn backward;
  };
  std::vector<Record> records_;
  bool recording_ = true;
};

}  // namespace tstf
