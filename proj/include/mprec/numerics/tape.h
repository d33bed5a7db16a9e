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

// Reverse-mode differentiation over a fixed set of batched primitives.
//
// Every node holds a matrix whose rows are independent examples; a
// primitive never mixes rows except through parameters and the final
// reductions (Mean, Sum). The gradient of a batch reduction is therefore the
// sum of the per-example gradients. Nodes are appended in evaluation order,
// so inputs always precede their consumers and Backward is a single reverse
// sweep.
//
// A Tape is single-use per forward pass and must not be shared across
// threads. Parameter leaves reference caller-owned matrices, which must
// outlive the tape.

#ifndef MPREC_NUMERICS_TAPE_H_
#define MPREC_NUMERICS_TAPE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mprec/numerics/matrix.h"

namespace mprec::numerics {

using NodeId = std::int32_t;
using ParamId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// One gradient matrix per parameter id, shaped like the parameter.
using GradientTable = std::vector<Matrix>;

GradientTable ZeroGradients(std::span<const Matrix> params);

// Constant sparse input, one CSR row per example.
struct SparseRows {
  Index width = 0;
  std::vector<Index> offsets = {0};
  std::vector<std::int32_t> cols;
  std::vector<double> values;

  Index rows() const { return static_cast<Index>(offsets.size()) - 1; }
  void AppendRow(std::span<const std::int32_t> row_cols,
                 std::span<const double> row_values);
  Matrix ToDense() const;
};

class Tape {
 public:
  NodeId Constant(Matrix value);
  NodeId Parameter(ParamId id, const Matrix& value);

  // x [B x n], w [m x n], optional b [m x 1] -> x·wᵀ + 1·bᵀ  [B x m]
  NodeId Affine(NodeId x, NodeId w, NodeId b = kNoNode);
  // Same as Affine with a constant sparse x.
  NodeId SparseAffine(SparseRows x, NodeId w, NodeId b = kNoNode);
  // Row r of the result is row rows[r] of x.
  NodeId GatherRows(NodeId x, std::vector<Index> rows);

  NodeId Relu(NodeId x);
  NodeId Tanh(NodeId x);
  NodeId SoftmaxRows(NodeId x);
  NodeId Hadamard(NodeId a, NodeId b);
  NodeId ConcatCols(std::span<const NodeId> parts);
  NodeId SliceCols(NodeId x, Index begin, Index count);

  // Row r holds the row-major flattening of a_r·b_rᵀ: [B x m], [B x n] ->
  // [B x m·n].
  NodeId OuterRows(NodeId a, NodeId b);
  // Treat each row of x as an m x n block; average along it.
  NodeId BlockRowMeans(NodeId x, Index m, Index n);  // -> [B x m]
  NodeId BlockColMeans(NodeId x, Index m, Index n);  // -> [B x n]

  // Fused BlockRowMeans/BlockColMeans of tanh(OuterRows(a, b)), returned
  // side by side as [B x (m + n)]. Entries of a and b must lie in [0, 1],
  // which holds for softmax outputs. The d x d blocks are never stored.
  NodeId CorrelatedGate(NodeId a, NodeId b);

  // Row-wise cosine -> [B x 1]. A zero-norm row yields 0 with zero gradient.
  NodeId CosineRows(NodeId a, NodeId b);

  // Per-row clamped binary cross-entropy of scores [B x 1] against targets.
  NodeId Bce(NodeId scores, std::vector<double> targets, double clamp_eps);

  NodeId Mean(NodeId x);  // -> [1 x 1]
  NodeId Sum(NodeId x);   // -> [1 x 1]

  const Matrix& Value(NodeId id) const;
  std::size_t size() const { return nodes_.size(); }
  void Clear() { nodes_.clear(); }

  // Accumulates d(output)/d(param) into grads[param id] for every parameter
  // leaf reachable from `output`. `output` must be a 1 x 1 node; `grads`
  // must be sized by ZeroGradients or equivalent.
  void Backward(NodeId output, GradientTable& grads) const;

 private:
  enum class Op : std::uint8_t {
    kConstant,
    kParameter,
    kAffine,
    kSparseAffine,
    kGatherRows,
    kRelu,
    kTanh,
    kSoftmaxRows,
    kHadamard,
    kConcatCols,
    kSliceCols,
    kOuterRows,
    kBlockRowMeans,
    kBlockColMeans,
    kCorrelatedGate,
    kCosineRows,
    kBce,
    kMean,
    kSum,
  };

  struct Node {
    Op op;
    NodeId a = kNoNode;
    NodeId b = kNoNode;
    NodeId c = kNoNode;
    Matrix value{};
    const Matrix* param = nullptr;
    ParamId param_id = -1;
    Index m = 0;
    Index n = 0;
    double eps = 0.0;
    std::vector<NodeId> parts{};
    std::vector<double> targets{};
    std::vector<Index> gather{};
    SparseRows sparse{};
  };

  NodeId Push(Node node);
  void Check(NodeId id) const;

  std::vector<Node> nodes_;
};

}  // namespace mprec::numerics

#endif  // MPREC_NUMERICS_TAPE_H_
