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

#include "mprec/model/attention.h"

#include <string>

#include "mprec/errors.h"
#include "mprec/numerics/ops.h"

namespace mprec::model {
namespace {

// Sparse W·x + b where x is given by (indices, values).
Vector SparseAffine(const Matrix& w, std::span<const std::int32_t> cols,
                    std::span<const double> values, const Matrix& b) {
  Vector out = b.col(0);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out.noalias() += values[k] * w.col(cols[k]);
  }
  return out;
}

void CheckSquare(const Matrix& a, const Vector& q, const char* what) {
  if (a.rows() != a.cols() || a.cols() != q.size()) {
    throw DimensionError(std::string(what) + ": attention matrix " +
                         numerics::ShapeOf(a) + " does not fit encoding " +
                         numerics::ShapeOf(q));
  }
}

}  // namespace

InputEncoding EncodeInputs(const ModelParams& params,
                           const data::InteractionMatrix& interactions,
                           std::int32_t user, std::int32_t item) {
  const Matrix& w = params.tensors.at(ParamLayout::kInputUserWeight);
  const Matrix& m = params.tensors.at(ParamLayout::kInputItemWeight);
  if (w.cols() != interactions.cols() || m.cols() != interactions.rows()) {
    throw DimensionError("input weights " + numerics::ShapeOf(w) + " and " +
                         numerics::ShapeOf(m) + " do not match interaction matrix " +
                         ShapeString(interactions.rows(), interactions.cols()));
  }
  InputEncoding enc;
  enc.user = numerics::Relu(SparseAffine(w, interactions.RowIndices(user),
                                         interactions.RowValues(user),
                                         params.tensors[ParamLayout::kInputUserBias]));
  enc.item = numerics::Relu(SparseAffine(m, interactions.ColIndices(item),
                                         interactions.ColValues(item),
                                         params.tensors[ParamLayout::kInputItemBias]));
  return enc;
}

AttentionSignals SoftmaxAttention(const Matrix& a_user, const Matrix& a_item,
                                  const Vector& q_user, const Vector& q_item) {
  CheckSquare(a_user, q_item, "user attention");
  CheckSquare(a_item, q_user, "item attention");
  const Vector zero = Vector::Zero(a_user.rows());
  AttentionSignals out;
  out.user = numerics::Softmax(numerics::Affine(a_user, q_item, zero));
  out.item = numerics::Softmax(numerics::Affine(a_item, q_user, zero));
  return out;
}

AttentionSignals CorrelatedAttention(const Matrix& a_user, const Matrix& a_item,
                                     const Vector& q_user, const Vector& q_item) {
  AttentionSignals s = SoftmaxAttention(a_user, a_item, q_user, q_item);
  AttentionSignals out;
  out.correlation = numerics::Outer(s.user, s.item);
  const Matrix t = numerics::TanhMap(out.correlation);
  out.user = numerics::RowMeans(t);
  out.item = numerics::ColMeans(t);
  return out;
}

}  // namespace mprec::model
