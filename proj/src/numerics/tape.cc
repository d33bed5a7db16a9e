/*
 * Copyright 2026 The MPRec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mprec/numerics/tape.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mprec/numerics/ops.h"

namespace mprec::numerics {
namespace {

template <typename Expr>
void Accumulate(Matrix& slot, const Expr& expr) {
  if (slot.size() == 0) {
    slot = expr;
  } else {
    slot += expr;
  }
}

void RequireSameShape(const char* op, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": " + ShapeOf(a) + " vs " +
                         ShapeOf(b));
  }
}

void RequireBias(const char* op, const Matrix& w, const Matrix& b) {
  if (b.rows() != w.rows() || b.cols() != 1) {
    throw DimensionError(std::string(op) + ": bias " + ShapeOf(b) +
                         " does not match W " + ShapeOf(w));
  }
}

// sum_p c[p]·y^p
double Horner(std::span<const double> c, double y) {
  double acc = 0.0;
  for (std::size_t p = c.size(); p-- > 0;) acc = acc * y + c[p];
  return acc;
}

// sums[p] = sum_i w_i·x_i^(2p+1) for p < sums.size(), w = 1 when null.
void PowerSums(std::span<const double> x, std::span<const double> x2, const double* w,
               std::span<double> sums) {
  std::fill(sums.begin(), sums.end(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double pw = w ? w[i] * x[i] : x[i];
    for (double& s : sums) {
      s += pw;
      pw *= x2[i];
    }
  }
}

// Per-row quantities shared by the correlated gate's forward and backward
// passes. Because tanh is evaluated through an odd polynomial, every row
// and column mean of tanh(a·bᵀ) factors into power sums of a and b, so the
// m x k block is never formed.
struct GateRow {
  std::span<const double> a, b;
  std::vector<double> a2, b2;
  std::span<const double> coeffs;
  std::vector<double> pa, pb;  // unweighted power sums
  std::vector<double> ca, cb;  // coeffs[p]·pa[p], coeffs[p]·pb[p]

  void Load(const double* a_row, Index m, const double* b_row, Index k) {
    a = std::span(a_row, static_cast<std::size_t>(m));
    b = std::span(b_row, static_cast<std::size_t>(k));
    const auto [a_min, a_max] = std::minmax_element(a.begin(), a.end());
    const auto [b_min, b_max] = std::minmax_element(b.begin(), b.end());
    if (*a_min < 0.0 || *b_min < 0.0 || *a_max > 1.0 || *b_max > 1.0) {
      throw ContractViolation("correlated gate inputs must lie in [0, 1]");
    }
    coeffs = TanhSeriesFor(*a_max * *b_max);
    a2.resize(a.size());
    b2.resize(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) a2[i] = a[i] * a[i];
    for (std::size_t j = 0; j < b.size(); ++j) b2[j] = b[j] * b[j];
    const std::size_t terms = coeffs.size();
    pa.resize(terms);
    pb.resize(terms);
    PowerSums(a, a2, nullptr, pa);
    PowerSums(b, b2, nullptr, pb);
    ca.resize(terms);
    cb.resize(terms);
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
      ca[p] = coeffs[p] * pa[p];
      cb[p] = coeffs[p] * pb[p];
    }
  }
};

}  // namespace

GradientTable ZeroGradients(std::span<const Matrix> params) {
  GradientTable grads;
  grads.reserve(params.size());
  for (const Matrix& p : params) grads.push_back(Matrix::Zero(p.rows(), p.cols()));
  return grads;
}

void SparseRows::AppendRow(std::span<const std::int32_t> row_cols,
                           std::span<const double> row_values) {
  if (row_cols.size() != row_values.size()) {
    throw DimensionError("sparse row: " + std::to_string(row_cols.size()) +
                         " columns vs " + std::to_string(row_values.size()) +
                         " values");
  }
  for (std::int32_t c : row_cols) {
    if (c < 0 || c >= width) {
      throw IndexError("sparse row: column " + std::to_string(c) +
                       " outside width " + std::to_string(width));
    }
  }
  cols.insert(cols.end(), row_cols.begin(), row_cols.end());
  values.insert(values.end(), row_values.begin(), row_values.end());
  offsets.push_back(static_cast<Index>(cols.size()));
}

Matrix SparseRows::ToDense() const {
  Matrix out = Matrix::Zero(rows(), width);
  for (Index r = 0; r < rows(); ++r) {
    for (Index k = offsets[r]; k < offsets[r + 1]; ++k) {
      out(r, cols[k]) += values[k];
    }
  }
  return out;
}

NodeId Tape::Push(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

void Tape::Check(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw ContractViolation("tape: unknown node " + std::to_string(id));
  }
}

const Matrix& Tape::Value(NodeId id) const {
  Check(id);
  const Node& n = nodes_[id];
  return n.op == Op::kParameter ? *n.param : n.value;
}

NodeId Tape::Constant(Matrix value) {
  Node n{.op = Op::kConstant};
  n.value = std::move(value);
  return Push(std::move(n));
}

NodeId Tape::Parameter(ParamId id, const Matrix& value) {
  Node n{.op = Op::kParameter};
  n.param = &value;
  n.param_id = id;
  return Push(std::move(n));
}

NodeId Tape::Affine(NodeId x, NodeId w, NodeId b) {
  const Matrix& xv = Value(x);
  const Matrix& wv = Value(w);
  if (xv.cols() != wv.cols()) {
    throw DimensionError("affine: x " + ShapeOf(xv) + " incompatible with W " +
                         ShapeOf(wv));
  }
  Node n{.op = Op::kAffine, .a = x, .b = w, .c = b};
  n.value.noalias() = xv * wv.transpose();
  if (b != kNoNode) {
    const Matrix& bv = Value(b);
    RequireBias("affine", wv, bv);
    n.value.rowwise() += bv.col(0).transpose();
  }
  return Push(std::move(n));
}

NodeId Tape::SparseAffine(SparseRows x, NodeId w, NodeId b) {
  const Matrix& wv = Value(w);
  if (x.width != wv.cols()) {
    throw DimensionError("sparse affine: x " + ShapeString(x.rows(), x.width) +
                         " incompatible with W " + ShapeOf(wv));
  }
  Node n{.op = Op::kSparseAffine, .b = w, .c = b};
  n.value = Matrix::Zero(x.rows(), wv.rows());
  for (Index r = 0; r < x.rows(); ++r) {
    auto out = n.value.row(r);
    for (Index k = x.offsets[r]; k < x.offsets[r + 1]; ++k) {
      out += x.values[k] * wv.col(x.cols[k]).transpose();
    }
  }
  if (b != kNoNode) {
    const Matrix& bv = Value(b);
    RequireBias("sparse affine", wv, bv);
    n.value.rowwise() += bv.col(0).transpose();
  }
  n.sparse = std::move(x);
  return Push(std::move(n));
}

NodeId Tape::GatherRows(NodeId x, std::vector<Index> rows) {
  const Matrix& xv = Value(x);
  Node n{.op = Op::kGatherRows, .a = x};
  n.value.resize(static_cast<Index>(rows.size()), xv.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= xv.rows()) {
      throw IndexError("gather: row " + std::to_string(rows[r]) +
                       " outside " + ShapeOf(xv));
    }
    n.value.row(static_cast<Index>(r)) = xv.row(rows[r]);
  }
  n.gather = std::move(rows);
  return Push(std::move(n));
}

NodeId Tape::Relu(NodeId x) {
  Node n{.op = Op::kRelu, .a = x};
  n.value = Value(x).cwiseMax(0.0);
  return Push(std::move(n));
}

NodeId Tape::Tanh(NodeId x) {
  Node n{.op = Op::kTanh, .a = x};
  n.value = Value(x).array().tanh();
  return Push(std::move(n));
}

NodeId Tape::SoftmaxRows(NodeId x) {
  const Matrix& xv = Value(x);
  if (xv.cols() == 0) throw DimensionError("softmax: empty rows " + ShapeOf(xv));
  Node n{.op = Op::kSoftmaxRows, .a = x};
  n.value.resize(xv.rows(), xv.cols());
  for (Index r = 0; r < xv.rows(); ++r) {
    auto e = (xv.row(r).array() - xv.row(r).maxCoeff()).exp();
    n.value.row(r) = e / e.sum();
  }
  return Push(std::move(n));
}

NodeId Tape::Hadamard(NodeId a, NodeId b) {
  const Matrix& av = Value(a);
  const Matrix& bv = Value(b);
  RequireSameShape("hadamard", av, bv);
  Node n{.op = Op::kHadamard, .a = a, .b = b};
  n.value = av.cwiseProduct(bv);
  return Push(std::move(n));
}

NodeId Tape::ConcatCols(std::span<const NodeId> parts) {
  if (parts.empty()) throw DimensionError("concat: no inputs");
  const Index rows = Value(parts.front()).rows();
  Index cols = 0;
  for (NodeId p : parts) {
    const Matrix& pv = Value(p);
    if (pv.rows() != rows) {
      throw DimensionError("concat: " + ShapeOf(Value(parts.front())) +
                           " vs " + ShapeOf(pv));
    }
    cols += pv.cols();
  }
  Node n{.op = Op::kConcatCols};
  n.value.resize(rows, cols);
  Index at = 0;
  for (NodeId p : parts) {
    const Matrix& pv = Value(p);
    n.value.middleCols(at, pv.cols()) = pv;
    at += pv.cols();
  }
  n.parts.assign(parts.begin(), parts.end());
  return Push(std::move(n));
}

NodeId Tape::SliceCols(NodeId x, Index begin, Index count) {
  const Matrix& xv = Value(x);
  if (begin < 0 || count < 0 || begin + count > xv.cols()) {
    throw DimensionError("slice: columns [" + std::to_string(begin) + ", " +
                         std::to_string(begin + count) + ") outside " +
                         ShapeOf(xv));
  }
  Node n{.op = Op::kSliceCols, .a = x, .m = begin, .n = count};
  n.value = xv.middleCols(begin, count);
  return Push(std::move(n));
}

NodeId Tape::OuterRows(NodeId a, NodeId b) {
  const Matrix& av = Value(a);
  const Matrix& bv = Value(b);
  if (av.rows() != bv.rows()) {
    throw DimensionError("outer: " + ShapeOf(av) + " vs " + ShapeOf(bv));
  }
  const Index m = av.cols();
  const Index k = bv.cols();
  Node n{.op = Op::kOuterRows, .a = a, .b = b, .m = m, .n = k};
  n.value.resize(av.rows(), m * k);
  for (Index r = 0; r < av.rows(); ++r) {
    for (Index i = 0; i < m; ++i) {
      n.value.row(r).segment(i * k, k) = av(r, i) * bv.row(r);
    }
  }
  return Push(std::move(n));
}

NodeId Tape::BlockRowMeans(NodeId x, Index m, Index k) {
  const Matrix& xv = Value(x);
  if (m <= 0 || k <= 0 || xv.cols() != m * k) {
    throw DimensionError("block row means: " + ShapeOf(xv) +
                         " is not a batch of " + ShapeString(m, k) + " blocks");
  }
  Node n{.op = Op::kBlockRowMeans, .a = x, .m = m, .n = k};
  n.value.resize(xv.rows(), m);
  for (Index r = 0; r < xv.rows(); ++r) {
    for (Index i = 0; i < m; ++i) {
      n.value(r, i) = xv.row(r).segment(i * k, k).mean();
    }
  }
  return Push(std::move(n));
}

NodeId Tape::BlockColMeans(NodeId x, Index m, Index k) {
  const Matrix& xv = Value(x);
  if (m <= 0 || k <= 0 || xv.cols() != m * k) {
    throw DimensionError("block col means: " + ShapeOf(xv) +
                         " is not a batch of " + ShapeString(m, k) + " blocks");
  }
  Node n{.op = Op::kBlockColMeans, .a = x, .m = m, .n = k};
  n.value = Matrix::Zero(xv.rows(), k);
  for (Index r = 0; r < xv.rows(); ++r) {
    for (Index i = 0; i < m; ++i) {
      n.value.row(r) += xv.row(r).segment(i * k, k);
    }
  }
  n.value /= static_cast<double>(m);
  return Push(std::move(n));
}

NodeId Tape::CorrelatedGate(NodeId a, NodeId b) {
  const Matrix& av = Value(a);
  const Matrix& bv = Value(b);
  if (av.rows() != bv.rows() || av.cols() == 0 || bv.cols() == 0) {
    throw DimensionError("correlated gate: " + ShapeOf(av) + " vs " +
                         ShapeOf(bv));
  }
  const Index m = av.cols();
  const Index k = bv.cols();
  Node node{.op = Op::kCorrelatedGate, .a = a, .b = b, .m = m, .n = k};
  node.value.resize(av.rows(), m + k);
  GateRow row;
  for (Index r = 0; r < av.rows(); ++r) {
    row.Load(av.row(r).data(), m, bv.row(r).data(), k);
    double* out = node.value.row(r).data();
    // mean_j t(a_i b_j) = a_i/k · sum_p c_p (a_i²)^p · B_p, and symmetrically.
    for (Index i = 0; i < m; ++i) {
      out[i] = row.a[i] * Horner(row.cb, row.a2[i]) / static_cast<double>(k);
    }
    for (Index j = 0; j < k; ++j) {
      out[m + j] = row.b[j] * Horner(row.ca, row.b2[j]) / static_cast<double>(m);
    }
  }
  return Push(std::move(node));
}

NodeId Tape::CosineRows(NodeId a, NodeId b) {
  const Matrix& av = Value(a);
  const Matrix& bv = Value(b);
  RequireSameShape("cosine", av, bv);
  Node n{.op = Op::kCosineRows, .a = a, .b = b};
  n.value.resize(av.rows(), 1);
  for (Index r = 0; r < av.rows(); ++r) {
    const double na = av.row(r).norm();
    const double nb = bv.row(r).norm();
    n.value(r, 0) = (na == 0.0 || nb == 0.0)
                        ? 0.0
                        : std::clamp(av.row(r).dot(bv.row(r)) / (na * nb),
                                     -1.0, 1.0);
  }
  return Push(std::move(n));
}

NodeId Tape::Bce(NodeId scores, std::vector<double> targets, double clamp_eps) {
  const Matrix& sv = Value(scores);
  if (sv.cols() != 1 || sv.rows() != static_cast<Index>(targets.size())) {
    throw DimensionError("bce: scores " + ShapeOf(sv) + " vs " +
                         std::to_string(targets.size()) + " targets");
  }
  Node n{.op = Op::kBce, .a = scores, .eps = clamp_eps};
  n.value.resize(sv.rows(), 1);
  for (Index r = 0; r < sv.rows(); ++r) {
    n.value(r, 0) = ClampedBce(sv(r, 0), targets[r], clamp_eps).loss;
  }
  n.targets = std::move(targets);
  return Push(std::move(n));
}

NodeId Tape::Mean(NodeId x) {
  const Matrix& xv = Value(x);
  if (xv.size() == 0) throw DimensionError("mean: empty input");
  Node n{.op = Op::kMean, .a = x};
  n.value = Matrix::Constant(1, 1, xv.mean());
  return Push(std::move(n));
}

NodeId Tape::Sum(NodeId x) {
  Node n{.op = Op::kSum, .a = x};
  n.value = Matrix::Constant(1, 1, Value(x).sum());
  return Push(std::move(n));
}

void Tape::Backward(NodeId output, GradientTable& grads) const {
  Check(output);
  const Matrix& out_value = Value(output);
  if (out_value.rows() != 1 || out_value.cols() != 1) {
    throw ContractViolation("backward: output node has shape " +
                            ShapeOf(out_value) + ", expected [1 x 1]");
  }
  std::vector<Matrix> adj(static_cast<std::size_t>(output) + 1);
  adj[output] = Matrix::Ones(1, 1);

  for (NodeId id = output; id >= 0; --id) {
    const Matrix& g = adj[id];
    if (g.size() == 0) continue;
    const Node& n = nodes_[id];
    switch (n.op) {
      case Op::kConstant:
        break;
      case Op::kParameter: {
        if (n.param_id < 0 ||
            static_cast<std::size_t>(n.param_id) >= grads.size()) {
          throw ContractViolation("backward: gradient table has no slot for "
                                  "parameter " + std::to_string(n.param_id));
        }
        Accumulate(grads[n.param_id], g);
        break;
      }
      case Op::kAffine: {
        const Matrix& x = Value(n.a);
        const Matrix& w = Value(n.b);
        Accumulate(adj[n.a], g * w);
        Accumulate(adj[n.b], g.transpose() * x);
        if (n.c != kNoNode) Accumulate(adj[n.c], g.colwise().sum().transpose());
        break;
      }
      case Op::kSparseAffine: {
        const Matrix& w = Value(n.b);
        Matrix gw = Matrix::Zero(w.rows(), w.cols());
        const SparseRows& x = n.sparse;
        for (Index r = 0; r < x.rows(); ++r) {
          for (Index k = x.offsets[r]; k < x.offsets[r + 1]; ++k) {
            gw.col(x.cols[k]) += x.values[k] * g.row(r).transpose();
          }
        }
        Accumulate(adj[n.b], gw);
        if (n.c != kNoNode) Accumulate(adj[n.c], g.colwise().sum().transpose());
        break;
      }
      case Op::kGatherRows: {
        const Matrix& x = Value(n.a);
        Matrix gx = Matrix::Zero(x.rows(), x.cols());
        for (std::size_t r = 0; r < n.gather.size(); ++r) {
          gx.row(n.gather[r]) += g.row(static_cast<Index>(r));
        }
        Accumulate(adj[n.a], gx);
        break;
      }
      case Op::kRelu: {
        const Matrix& x = Value(n.a);
        Accumulate(adj[n.a],
                   (x.array() > 0.0).select(g, Matrix::Zero(g.rows(), g.cols())));
        break;
      }
      case Op::kTanh:
        Accumulate(adj[n.a],
                   (g.array() * (1.0 - n.value.array().square())).matrix());
        break;
      case Op::kSoftmaxRows: {
        const Matrix& s = n.value;
        Matrix gx(s.rows(), s.cols());
        for (Index r = 0; r < s.rows(); ++r) {
          const double dot = g.row(r).dot(s.row(r));
          gx.row(r) = s.row(r).cwiseProduct(
              (g.row(r).array() - dot).matrix());
        }
        Accumulate(adj[n.a], gx);
        break;
      }
      case Op::kHadamard:
        Accumulate(adj[n.a], g.cwiseProduct(Value(n.b)));
        Accumulate(adj[n.b], g.cwiseProduct(Value(n.a)));
        break;
      case Op::kConcatCols: {
        Index at = 0;
        for (NodeId p : n.parts) {
          const Index w = Value(p).cols();
          Accumulate(adj[p], g.middleCols(at, w));
          at += w;
        }
        break;
      }
      case Op::kSliceCols: {
        const Matrix& x = Value(n.a);
        Matrix& slot = adj[n.a];
        if (slot.size() == 0) slot = Matrix::Zero(x.rows(), x.cols());
        slot.middleCols(n.m, n.n) += g;
        break;
      }
      case Op::kOuterRows: {
        const Matrix& a = Value(n.a);
        const Matrix& b = Value(n.b);
        Matrix ga = Matrix::Zero(a.rows(), a.cols());
        Matrix gb = Matrix::Zero(b.rows(), b.cols());
        for (Index r = 0; r < a.rows(); ++r) {
          for (Index i = 0; i < n.m; ++i) {
            auto block = g.row(r).segment(i * n.n, n.n);
            ga(r, i) = block.dot(b.row(r));
            gb.row(r) += a(r, i) * block;
          }
        }
        Accumulate(adj[n.a], ga);
        Accumulate(adj[n.b], gb);
        break;
      }
      case Op::kBlockRowMeans: {
        Matrix gx(g.rows(), n.m * n.n);
        for (Index r = 0; r < g.rows(); ++r) {
          for (Index i = 0; i < n.m; ++i) {
            gx.row(r).segment(i * n.n, n.n).setConstant(
                g(r, i) / static_cast<double>(n.n));
          }
        }
        Accumulate(adj[n.a], gx);
        break;
      }
      case Op::kBlockColMeans: {
        Matrix gx(g.rows(), n.m * n.n);
        for (Index r = 0; r < g.rows(); ++r) {
          for (Index i = 0; i < n.m; ++i) {
            gx.row(r).segment(i * n.n, n.n) =
                g.row(r) / static_cast<double>(n.m);
          }
        }
        Accumulate(adj[n.a], gx);
        break;
      }
      case Op::kCorrelatedGate: {
        // With t(x) = sum_p c_p x^(2p+1), g_i = g_a_i / k, h_j = g_b_j / m:
        //   dL/da_i = sum_p (2p+1) c_p a_i^2p (g_i B_p + sum_j h_j b_j^(2p+1))
        //   dL/db_j = sum_p (2p+1) c_p b_j^2p (sum_i g_i a_i^(2p+1) + h_j A_p)
        const Matrix& a = Value(n.a);
        const Matrix& b = Value(n.b);
        const Index m = n.m;
        const Index k = n.n;
        Matrix ga(a.rows(), m);
        Matrix gb(b.rows(), k);
        GateRow row;
        std::vector<double> gi(m), hj(k), buf;
        for (Index r = 0; r < a.rows(); ++r) {
          row.Load(a.row(r).data(), m, b.row(r).data(), k);
          const double* g_a = g.row(r).data();
          for (Index i = 0; i < m; ++i) gi[i] = g_a[i] / static_cast<double>(k);
          for (Index j = 0; j < k; ++j) hj[j] = g_a[m + j] / static_cast<double>(m);
          const std::size_t terms = row.coeffs.size();
          buf.resize(6 * terms);
          const std::span<double> ha(buf.data(), terms), hb(buf.data() + terms, terms),
              da(buf.data() + 2 * terms, terms), db(buf.data() + 3 * terms, terms),
              dha(buf.data() + 4 * terms, terms), dhb(buf.data() + 5 * terms, terms);
          PowerSums(row.a, row.a2, gi.data(), ha);
          PowerSums(row.b, row.b2, hj.data(), hb);
          for (std::size_t p = 0; p < terms; ++p) {
            const double d = static_cast<double>(2 * p + 1) * row.coeffs[p];
            da[p] = d * row.pb[p];
            db[p] = d * hb[p];
            dha[p] = d * ha[p];
            dhb[p] = d * row.pa[p];
          }
          for (Index i = 0; i < m; ++i) {
            ga(r, i) = gi[i] * Horner(da, row.a2[i]) + Horner(db, row.a2[i]);
          }
          for (Index j = 0; j < k; ++j) {
            gb(r, j) = Horner(dha, row.b2[j]) + hj[j] * Horner(dhb, row.b2[j]);
          }
        }
        Accumulate(adj[n.a], ga);
        Accumulate(adj[n.b], gb);
        break;
      }
      case Op::kCosineRows: {
        const Matrix& a = Value(n.a);
        const Matrix& b = Value(n.b);
        Matrix ga = Matrix::Zero(a.rows(), a.cols());
        Matrix gb = Matrix::Zero(b.rows(), b.cols());
        for (Index r = 0; r < a.rows(); ++r) {
          const double na = a.row(r).norm();
          const double nb = b.row(r).norm();
          if (na == 0.0 || nb == 0.0) continue;
          const double c = n.value(r, 0);
          const double gr = g(r, 0);
          ga.row(r) = gr * (b.row(r) / (na * nb) - c * a.row(r) / (na * na));
          gb.row(r) = gr * (a.row(r) / (na * nb) - c * b.row(r) / (nb * nb));
        }
        Accumulate(adj[n.a], ga);
        Accumulate(adj[n.b], gb);
        break;
      }
      case Op::kBce: {
        const Matrix& s = Value(n.a);
        Matrix gs(s.rows(), 1);
        for (Index r = 0; r < s.rows(); ++r) {
          gs(r, 0) = g(r, 0) * ClampedBce(s(r, 0), n.targets[r], n.eps).grad;
        }
        Accumulate(adj[n.a], gs);
        break;
      }
      case Op::kMean: {
        const Matrix& x = Value(n.a);
        Accumulate(adj[n.a],
                   Matrix::Constant(x.rows(), x.cols(),
                                    g(0, 0) / static_cast<double>(x.size())));
        break;
      }
      case Op::kSum: {
        const Matrix& x = Value(n.a);
        Accumulate(adj[n.a], Matrix::Constant(x.rows(), x.cols(), g(0, 0)));
        break;
      }
    }
  }
}

}  // namespace mprec::numerics
