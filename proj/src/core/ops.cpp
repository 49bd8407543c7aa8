// Copyright 2026 The tstf-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "tstf/core/ops.hpp"

#include "tstf/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tstf {
namespace {

void accumulate(const Tensor& t, const Eigen::Ref<const Vector>& g) {
  if (t.requires_grad()) t.mutable_grad() += g;
}

Index normalize_axis(Index axis, Index rank, const char* op) {
  const Index a = axis < 0 ? axis + rank : axis;
  if (a < 0 || a >= rank) {
    throw DimensionError(std::string(op) + ": axis " + std::to_string(axis) + " out of range for rank " +
                         std::to_string(rank));
  }
  return a;
}

// Product of dims in [begin, end).
Index span_count(const Shape& s, Index begin, Index end) {
  Index n = 1;
  for (Index i = begin; i < end; ++i) n *= s[static_cast<std::size_t>(i)];
  return n;
}

Vector permute_data(const Vector& in, const Shape& in_shape, std::span<const Index> perm) {
  const std::size_t r = in_shape.size();
  std::vector<Index> in_strides(r, 1);
  for (std::size_t i = r; i-- > 1;) in_strides[i - 1] = in_strides[i] * in_shape[i];
  Shape out_shape(r);
  std::vector<Index> strides(r);
  for (std::size_t i = 0; i < r; ++i) {
    out_shape[i] = in_shape[static_cast<std::size_t>(perm[i])];
    strides[i] = in_strides[static_cast<std::size_t>(perm[i])];
  }
  Vector out(in.size());
  std::vector<Index> counter(r, 0);
  Index src = 0;
  for (Index k = 0; k < out.size(); ++k) {
    out[k] = in[src];
    for (std::size_t ax = r; ax-- > 0;) {
      src += strides[ax];
      if (++counter[ax] < out_shape[ax]) break;
      src -= strides[ax] * out_shape[ax];
      counter[ax] = 0;
    }
  }
  return out;
}

}  // namespace

Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw DimensionError("matmul: shape mismatch " + to_string(a.shape()) + " x " + to_string(b.shape()));
  }
  const Index m = a.dim(0), k = a.dim(1), n = b.dim(1);
  RowMatrix c = a.matrix(m, k) * b.matrix(k, n);
  const bool track = tape.needs_grad({&a, &b});
  return tape.emit({m, n}, Eigen::Map<Vector>(c.data(), c.size()), track,
                   [a, b, m, k, n](const Vector& g) {
                     ConstMatrixMap gc(g.data(), m, n);
                     if (a.requires_grad()) {
                       MatrixMap(a.mutable_grad().data(), m, k).noalias() += gc * b.matrix(k, n).transpose();
                     }
                     if (b.requires_grad()) {
                       MatrixMap(b.mutable_grad().data(), k, n).noalias() += a.matrix(m, k).transpose() * gc;
                     }
                   },
                   "matmul");
}

Tensor bmm(Tape& tape, const Tensor& a, const Tensor& b, bool transpose_b) {
  const Index ra = a.rank(), rb = b.rank();
  bool ok = ra >= 2 && ra == rb;
  for (Index i = 0; ok && i < ra - 2; ++i) ok = a.dim(i) == b.dim(i);
  const Index m = ok ? a.dim(-2) : 0, k = ok ? a.dim(-1) : 0;
  const Index n = ok ? (transpose_b ? b.dim(-2) : b.dim(-1)) : 0;
  if (ok) ok = (transpose_b ? b.dim(-1) : b.dim(-2)) == k;
  if (!ok) {
    throw DimensionError("bmm: shape mismatch " + to_string(a.shape()) + " x " + to_string(b.shape()) +
                         (transpose_b ? " (b transposed)" : ""));
  }
  const Index batch = span_count(a.shape(), 0, ra - 2);
  Shape out_shape(a.shape().begin(), a.shape().end() - 2);
  out_shape.push_back(m);
  out_shape.push_back(n);
  Vector out(batch * m * n);
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  for (Index g = 0; g < batch; ++g) {
    ConstMatrixMap am(pa + g * m * k, m, k);
    MatrixMap cm(out.data() + g * m * n, m, n);
    if (transpose_b) {
      cm.noalias() = am * ConstMatrixMap(pb + g * n * k, n, k).transpose();
    } else {
      cm.noalias() = am * ConstMatrixMap(pb + g * k * n, k, n);
    }
  }
  const bool track = tape.needs_grad({&a, &b});
  return tape.emit(std::move(out_shape), std::move(out), track,
                   [a, b, batch, m, k, n, transpose_b](const Vector& grad) {
                     const double* pa = a.data().data();
                     const double* pb = b.data().data();
                     for (Index g = 0; g < batch; ++g) {
                       ConstMatrixMap gc(grad.data() + g * m * n, m, n);
                       ConstMatrixMap am(pa + g * m * k, m, k);
                       if (transpose_b) {
                         ConstMatrixMap bm(pb + g * n * k, n, k);
                         if (a.requires_grad()) MatrixMap(a.mutable_grad().data() + g * m * k, m, k).noalias() += gc * bm;
                         if (b.requires_grad()) {
                           MatrixMap(b.mutable_grad().data() + g * n * k, n, k).noalias() += gc.transpose() * am;
                         }
                       } else {
                         ConstMatrixMap bm(pb + g * k * n, k, n);
                         if (a.requires_grad()) {
                           MatrixMap(a.mutable_grad().data() + g * m * k, m, k).noalias() += gc * bm.transpose();
                         }
                         if (b.requires_grad()) {
                           MatrixMap(b.mutable_grad().data() + g * k * n, k, n).noalias() += am.transpose() * gc;
                         }
                       }
                     }
                   },
                   "bmm");
}

Tensor linear(Tape& tape, const Tensor& x, const Tensor& w, const Tensor& bias) {
  if (w.rank() != 2 || x.dim(-1) != w.dim(0) || (bias.defined() && (bias.rank() != 1 || bias.dim(0) != w.dim(1)))) {
    throw DimensionError("linear: shape mismatch x" + to_string(x.shape()) + " w" + to_string(w.shape()) +
                         (bias.defined() ? " b" + to_string(bias.shape()) : ""));
  }
  const Index in = w.dim(0), out_dim = w.dim(1), rows = x.size() / in;
  RowMatrix y = x.matrix(rows, in) * w.matrix(in, out_dim);
  if (bias.defined()) y.rowwise() += bias.data().transpose();
  Shape shape = x.shape();
  shape.back() = out_dim;
  const bool track = tape.needs_grad({&x, &w, bias.defined() ? &bias : nullptr});
  return tape.emit(std::move(shape), Eigen::Map<Vector>(y.data(), y.size()), track,
                   [x, w, bias, in, out_dim, rows](const Vector& g) {
                     ConstMatrixMap gy(g.data(), rows, out_dim);
                     if (x.requires_grad()) {
                       MatrixMap(x.mutable_grad().data(), rows, in).noalias() += gy * w.matrix(in, out_dim).transpose();
                     }
                     if (w.requires_grad()) {
                       MatrixMap(w.mutable_grad().data(), in, out_dim).noalias() += x.matrix(rows, in).transpose() * gy;
                     }
                     if (bias.defined() && bias.requires_grad()) bias.mutable_grad() += gy.colwise().sum().transpose();
                   },
                   "linear");
}

Tensor add(Tape& tape, const Tensor& a, const Tensor& b) {
  const Shape& sa = a.shape();
  const Shape& sb = b.shape();
  bool suffix = sb.size() <= sa.size() && std::equal(sb.rbegin(), sb.rend(), sa.rbegin());
  if (!suffix) throw DimensionError("add: cannot broadcast " + to_string(sb) + " onto " + to_string(sa));
  const Index inner = b.size(), reps = a.size() / inner;
  Vector out = a.data();
  MatrixMap(out.data(), reps, inner).rowwise() += b.data().transpose();
  const bool track = tape.needs_grad({&a, &b});
  return tape.emit(sa, std::move(out), track,
                   [a, b, reps, inner](const Vector& g) {
                     accumulate(a, g);
                     if (b.requires_grad()) b.mutable_grad() += ConstMatrixMap(g.data(), reps, inner).colwise().sum().transpose();
                   },
                   "add");
}

Tensor mul(Tape& tape, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw DimensionError("mul: shape mismatch " + to_string(a.shape()) + " vs " + to_string(b.shape()));
  }
  Vector out = a.data().cwiseProduct(b.data());
  const bool track = tape.needs_grad({&a, &b});
  return tape.emit(a.shape(), std::move(out), track,
                   [a, b](const Vector& g) {
                     accumulate(a, g.cwiseProduct(b.data()));
                     accumulate(b, g.cwiseProduct(a.data()));
                   },
                   "mul");
}

Tensor scale(Tape& tape, const Tensor& a, double factor) {
  const bool track = tape.needs_grad({&a});
  return tape.emit(a.shape(), a.data() * factor, track,
                   [a, factor](const Vector& g) { accumulate(a, g * factor); }, "scale");
}

Tensor sum(Tape& tape, const Tensor& a) {
  const bool track = tape.needs_grad({&a});
  return tape.emit({1}, Vector::Constant(1, a.data().sum()), track,
                   [a](const Vector& g) { accumulate(a, Vector::Constant(a.size(), g[0])); }, "sum");
}

Tensor mean(Tape& tape, const Tensor& a) {
  const double n = static_cast<double>(a.size());
  const bool track = tape.needs_grad({&a});
  return tape.emit({1}, Vector::Constant(1, a.data().sum() / n), track,
                   [a, n](const Vector& g) { accumulate(a, Vector::Constant(a.size(), g[0] / n)); },
                   "mean");
}

Tensor softmax(Tape& tape, const Tensor& x, Index axis) {
  const Index ax = normalize_axis(axis, x.rank(), "softmax");
  const Index outer = span_count(x.shape(), 0, ax);
  const Index len = x.shape()[static_cast<std::size_t>(ax)];
  const Index inner = span_count(x.shape(), ax + 1, x.rank());
  Vector y(x.size());
  const Vector& in = x.data();
  for (Index o = 0; o < outer; ++o) {
    for (Index i = 0; i < inner; ++i) {
      const Index base = o * len * inner + i;
      double mx = in[base];
      for (Index j = 1; j < len; ++j) mx = std::max(mx, in[base + j * inner]);
      double total = 0.0;
      for (Index j = 0; j < len; ++j) total += (y[base + j * inner] = std::exp(in[base + j * inner] - mx));
      for (Index j = 0; j < len; ++j) y[base + j * inner] /= total;
    }
  }
  const bool track = tape.needs_grad({&x});
  Vector saved = track ? y : Vector();
  return tape.emit(x.shape(), std::move(y), track,
                   [x, saved = std::move(saved), outer, len, inner](const Vector& g) {
                     Vector dx(saved.size());
                     for (Index o = 0; o < outer; ++o) {
                       for (Index i = 0; i < inner; ++i) {
                         const Index base = o * len * inner + i;
                         double dot = 0.0;
                         for (Index j = 0; j < len; ++j) dot += g[base + j * inner] * saved[base + j * inner];
                         for (Index j = 0; j < len; ++j) {
                           dx[base + j * inner] = saved[base + j * inner] * (g[base + j * inner] - dot);
                         }
                       }
                     }
                     accumulate(x, dx);
                   },
                   "softmax");
}

Tensor layer_norm(Tape& tape, const Tensor& x, const Tensor& gamma, const Tensor& beta, double eps) {
  const Index d = x.dim(-1);
  if (gamma.size() != d || beta.size() != d) {
    throw DimensionError("layer_norm: gamma/beta " + to_string(gamma.shape()) + "/" + to_string(beta.shape()) +
                         " do not match feature dim of " + to_string(x.shape()));
  }
  const Index rows = x.size() / d;
  ConstMatrixMap xm = x.matrix(rows, d);
  RowMatrix xhat(rows, d);
  Vector inv_std(rows);
  for (Index r = 0; r < rows; ++r) {
    const double mu = xm.row(r).mean();
    const double var = (xm.row(r).array() - mu).square().mean();
    inv_std[r] = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = (xm.row(r).array() - mu) * inv_std[r];
  }
  RowMatrix y = xhat;
  y.array().rowwise() *= gamma.data().transpose().array();
  y.rowwise() += beta.data().transpose();
  const bool track = tape.needs_grad({&x, &gamma, &beta});
  return tape.emit(x.shape(), Eigen::Map<Vector>(y.data(), y.size()), track,
                   [x, gamma, beta, xhat = std::move(xhat), inv_std = std::move(inv_std), rows,
                    d](const Vector& g) {
                     ConstMatrixMap gm(g.data(), rows, d);
                     if (gamma.requires_grad()) gamma.mutable_grad() += gm.cwiseProduct(xhat).colwise().sum().transpose();
                     if (beta.requires_grad()) beta.mutable_grad() += gm.colwise().sum().transpose();
                     if (!x.requires_grad()) return;
                     MatrixMap dx(x.mutable_grad().data(), rows, d);
                     for (Index r = 0; r < rows; ++r) {
                       Eigen::RowVectorXd dxhat = gm.row(r).cwiseProduct(gamma.data().transpose());
                       const double m1 = dxhat.mean();
                       const double m2 = dxhat.cwiseProduct(xhat.row(r)).mean();
                       dx.row(r) += inv_std[r] * (dxhat.array() - m1 - xhat.row(r).array() * m2).matrix();
                     }
                   },
                   "layer_norm");
}

Tensor gelu(Tape& tape, const Tensor& x) {
  constexpr double c = 0.7978845608028654;  // sqrt(2/pi)
  constexpr double k = 0.044715;
  const Vector& in = x.data();
  Vector y(in.size());
  for (Index i = 0; i < in.size(); ++i) {
    const double v = in[i];
    y[i] = 0.5 * v * (1.0 + std::tanh(c * (v + k * v * v * v)));
  }
  const bool track = tape.needs_grad({&x});
  return tape.emit(x.shape(), std::move(y), track,
                   [x](const Vector& g) {
                     const Vector& in = x.data();
                     Vector dx(in.size());
                     for (Index i = 0; i < in.size(); ++i) {
                       const double v = in[i];
                       const double t = std::tanh(c * (v + k * v * v * v));
                       dx[i] = g[i] * (0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * c * (1.0 + 3.0 * k * v * v));
                     }
                     accumulate(x, dx);
                   },
                   "gelu");
}

Tensor sigmoid(Tape& tape, const Tensor& x) {
  const Vector& in = x.data();
  Vector y(in.size());
  for (Index i = 0; i < in.size(); ++i) {
    const double v = in[i];
    if (v >= 0.0) {
      y[i] = 1.0 / (1.0 + std::exp(-v));
    } else {
      const double e = std::exp(v);
      y[i] = e / (1.0 + e);
    }
  }
  const bool track = tape.needs_grad({&x});
  Vector saved = track ? y : Vector();
  return tape.emit(x.shape(), std::move(y), track,
                   [x, saved = std::move(saved)](const Vector& g) {
                     accumulate(x, g.cwiseProduct(saved.cwiseProduct((1.0 - saved.array()).matrix())));
                   },
                   "sigmoid");
}

Tensor reshape(Tape& tape, const Tensor& x, Shape shape) {
  if (element_count(shape) != x.size()) {
    throw DimensionError("reshape: cannot view " + to_string(x.shape()) + " as " + to_string(shape));
  }
  const bool track = tape.needs_grad({&x});
  return tape.emit(std::move(shape), x.data(), track, [x](const Vector& g) { accumulate(x, g); }, "reshape");
}

Tensor permute(Tape& tape, const Tensor& x, std::span<const Index> perm) {
  const std::size_t r = static_cast<std::size_t>(x.rank());
  std::vector<bool> seen(r, false);
  bool ok = perm.size() == r;
  for (std::size_t i = 0; ok && i < r; ++i) {
    ok = perm[i] >= 0 && static_cast<std::size_t>(perm[i]) < r && !seen[static_cast<std::size_t>(perm[i])];
    if (ok) seen[static_cast<std::size_t>(perm[i])] = true;
  }
  if (!ok) throw DimensionError("permute: invalid permutation for shape " + to_string(x.shape()));
  Shape out_shape(r);
  std::vector<Index> inverse(r);
  for (std::size_t i = 0; i < r; ++i) {
    out_shape[i] = x.shape()[static_cast<std::size_t>(perm[i])];
    inverse[static_cast<std::size_t>(perm[i])] = static_cast<Index>(i);
  }
  Vector out = permute_data(x.data(), x.shape(), perm);
  const bool track = tape.needs_grad({&x});
  return tape.emit(out_shape, std::move(out), track,
                   [x, out_shape, inverse = std::move(inverse)](const Vector& g) {
                     accumulate(x, permute_data(g, out_shape, inverse));
                   },
                   "permute");
}

Tensor permute(Tape& tape, const Tensor& x, std::initializer_list<Index> perm) {
  return permute(tape, x, std::span<const Index>(perm.begin(), perm.size()));
}

Tensor concat(Tape& tape, std::span<const Tensor> parts, Index axis) {
  if (parts.empty()) throw DimensionError("concat: no inputs");
  const Shape& first = parts[0].shape();
  const Index ax = normalize_axis(axis, static_cast<Index>(first.size()), "concat");
  Shape out_shape = first;
  out_shape[static_cast<std::size_t>(ax)] = 0;
  for (const Tensor& p : parts) {
    bool ok = p.shape().size() == first.size();
    for (std::size_t i = 0; ok && i < first.size(); ++i) {
      ok = static_cast<Index>(i) == ax || p.shape()[i] == first[i];
    }
    if (!ok) throw DimensionError("concat: " + to_string(p.shape()) + " incompatible with " + to_string(first));
    out_shape[static_cast<std::size_t>(ax)] += p.shape()[static_cast<std::size_t>(ax)];
  }
  const Index outer = span_count(first, 0, ax);
  const Index inner = span_count(first, ax + 1, static_cast<Index>(first.size()));
  const Index out_row = out_shape[static_cast<std::size_t>(ax)] * inner;
  Vector out(element_count(out_shape));
  std::vector<Index> widths;
  Index offset = 0;
  bool track = false;
  for (const Tensor& p : parts) {
    const Index w = p.shape()[static_cast<std::size_t>(ax)] * inner;
    for (Index o = 0; o < outer; ++o) out.segment(o * out_row + offset, w) = p.data().segment(o * w, w);
    widths.push_back(w);
    offset += w;
    track = track || tape.needs_grad({&p});
  }
  std::vector<Tensor> inputs(parts.begin(), parts.end());
  return tape.emit(std::move(out_shape), std::move(out), track,
                   [inputs = std::move(inputs), widths = std::move(widths), outer, out_row](const Vector& g) {
                     Index offset = 0;
                     for (std::size_t i = 0; i < inputs.size(); ++i) {
                       const Index w = widths[i];
                       if (inputs[i].requires_grad()) {
                         Vector& dst = inputs[i].mutable_grad();
                         for (Index o = 0; o < outer; ++o) dst.segment(o * w, w) += g.segment(o * out_row + offset, w);
                       }
                       offset += w;
                     }
                   },
                   "concat");
}

Tensor slice(Tape& tape, const Tensor& x, Index axis, Index start, Index length) {
  const Index ax = normalize_axis(axis, x.rank(), "slice");
  const Index extent = x.shape()[static_cast<std::size_t>(ax)];
  if (start < 0 || length <= 0 || start + length > extent) {
    throw DimensionError("slice: range [" + std::to_string(start) + ", " + std::to_string(start + length) +
                         ") outside axis of size " + std::to_string(extent) + " in " + to_string(x.shape()));
  }
  const Index outer = span_count(x.shape(), 0, ax);
  const Index inner = span_count(x.shape(), ax + 1, x.rank());
  const Index in_row = extent * inner, w = length * inner, off = start * inner;
  Vector out(outer * w);
  for (Index o = 0; o < outer; ++o) out.segment(o * w, w) = x.data().segment(o * in_row + off, w);
  Shape shape = x.shape();
  shape[static_cast<std::size_t>(ax)] = length;
  const bool track = tape.needs_grad({&x});
  return tape.emit(std::move(shape), std::move(out), track,
                   [x, outer, in_row, w, off](const Vector& g) {
                     if (!x.requires_grad()) return;
                     Vector& dst = x.mutable_grad();
                     for (Index o = 0; o < outer; ++o) dst.segment(o * in_row + off, w) += g.segment(o * w, w);
                   },
                   "slice");
}

Tensor bce_loss(Tape& tape, const Tensor& p, std::span<const double> labels) {
  if (static_cast<Index>(labels.size()) != p.size()) {
    throw ContractError("bce_loss: " + std::to_string(labels.size()) + " labels for " + std::to_string(p.size()) +
                        " predictions");
  }
  constexpr double lo = 1e-12, hi = 1.0 - 1e-12;
  const double m = static_cast<double>(p.size());
  Vector clamped(p.size());
  double loss = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    const double y = labels[static_cast<std::size_t>(i)];
    if (y != 0.0 && y != 1.0) throw ContractError("bce_loss: label " + std::to_string(y) + " is not in {0,1}");
    const double q = std::clamp(p[i], lo, hi);
    clamped[i] = q;
    loss -= y * std::log(q) + (1.0 - y) * std::log(1.0 - q);
  }
  loss /= m;
  std::vector<double> y(labels.begin(), labels.end());
  const bool track = tape.needs_grad({&p});
  return tape.emit({1}, Vector::Constant(1, loss), track,
                   [p, y = std::move(y), clamped = std::move(clamped), m](const Vector& g) {
                     Vector dp(clamped.size());
                     for (Index i = 0; i < dp.size(); ++i) {
                       const double yi = y[static_cast<std::size_t>(i)];
                       dp[i] = -g[0] / m * (yi / clamped[i] - (1.0 - yi) / (1.0 - clamped[i]));
                     }
                     accumulate(p, dp);
                   },
                   "bce_loss");
}

}  // namespace tstf
