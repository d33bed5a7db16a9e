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

// Single-pair, value-level building blocks of the encoder. The batched
// training path in network.h builds the same computation on a Tape.

#ifndef MPREC_MODEL_ATTENTION_H_
#define MPREC_MODEL_ATTENTION_H_

#include <cstdint>

#include "mprec/data/interaction_matrix.h"
#include "mprec/model/params.h"
#include "mprec/numerics/matrix.h"

namespace mprec::model {

using numerics::Vector;

struct InputEncoding {
  Vector user;  // relu(W·T[i,:] + b_u)
  Vector item;  // relu(M·T[:,j] + b_v)
};

// Throws IndexError for an out-of-range user or item.
InputEncoding EncodeInputs(const ModelParams& params,
                           const data::InteractionMatrix& interactions,
                           std::int32_t user, std::int32_t item);

struct AttentionSignals {
  Vector user;
  Vector item;
  Matrix correlation;  // empty for softmax attention
};

// a_u = softmax(A_u·q_v), a_v = softmax(A_v·q_u).
AttentionSignals SoftmaxAttention(const Matrix& a_user, const Matrix& a_item,
                                  const Vector& q_user, const Vector& q_item);

// C = softmax(A_u·q_v)·softmax(A_v·q_u)ᵀ; a_u and a_v are the row and
// column means of tanh(C).
AttentionSignals CorrelatedAttention(const Matrix& a_user, const Matrix& a_item,
                                     const Vector& q_user, const Vector& q_item);

}  // namespace mprec::model

#endif  // MPREC_MODEL_ATTENTION_H_
