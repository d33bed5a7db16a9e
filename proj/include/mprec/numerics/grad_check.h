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

#ifndef MPREC_NUMERICS_GRAD_CHECK_H_
#define MPREC_NUMERICS_GRAD_CHECK_H_

#include <functional>
#include <vector>

#include "mprec/numerics/matrix.h"
#include "mprec/numerics/tape.h"

namespace mprec::numerics {

// Scalar objective over a parameter list. When `grads` is non-null it is
// sized like `params` and zeroed; the objective adds its analytic gradient.
using Objective =
    std::function<double(const std::vector<Matrix>& params, GradientTable* grads)>;

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::vector<double> per_tensor_max;  // indexed like params
  std::size_t entries_checked = 0;
  int worst_tensor = -1;
  Index worst_entry = -1;  // row-major offset inside worst_tensor
};

// Compares the analytic gradient to central differences
// (f(p + eps) - f(p - eps)) / (2 eps) at every parameter entry. Relative
// error is |g - ĝ| / max(1e-8, |g| + |ĝ|).
GradCheckResult GradCheck(const Objective& f, std::vector<Matrix> params,
                          double eps = 1e-5);

}  // namespace mprec::numerics

#endif  // MPREC_NUMERICS_GRAD_CHECK_H_
