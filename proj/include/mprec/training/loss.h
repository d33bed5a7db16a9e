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

#ifndef MPREC_TRAINING_LOSS_H_
#define MPREC_TRAINING_LOSS_H_

#include <span>

#include "mprec/data/interaction_matrix.h"
#include "mprec/data/sampling.h"
#include "mprec/model/network.h"
#include "mprec/numerics/ops.h"
#include "mprec/numerics/tape.h"

namespace mprec::training {

// Clamped binary cross-entropy of one score. `eps` must lie in (0, 0.5).
numerics::BceValue BceLoss(double score, double target, double eps);

// Mean clamped BCE over `batch`. If `grads` is non-null the gradient of that
// mean is added into it (one entry per parameter tensor).
double BatchLoss(const model::ModelConfig& config, const model::ModelParams& params,
                 const data::InteractionMatrix& interactions,
                 std::span<const data::Instance> batch, double clamp_eps,
                 numerics::GradientTable* grads, model::GraphOptions options = {});

}  // namespace mprec::training

#endif  // MPREC_TRAINING_LOSS_H_
