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

#include "mprec/numerics/grad_check.h"

#include <algorithm>
#include <cmath>

namespace mprec::numerics {

GradCheckResult GradCheck(const Objective& f, std::vector<Matrix> params,
                          double eps) {
  if (!(eps > 0.0)) throw ContractViolation("grad check: eps must be > 0");
  GradientTable analytic = ZeroGradients(params);
  f(params, &analytic);

  GradCheckResult result;
  result.per_tensor_max.assign(params.size(), 0.0);
  for (std::size_t t = 0; t < params.size(); ++t) {
    double* data = params[t].data();
    for (Index e = 0; e < params[t].size(); ++e) {
      const double saved = data[e];
      data[e] = saved + eps;
      const double up = f(params, nullptr);
      data[e] = saved - eps;
      const double down = f(params, nullptr);
      data[e] = saved;

      const double numeric = (up - down) / (2.0 * eps);
      const double g = analytic[t].data()[e];
      const double rel =
          std::abs(g - numeric) / std::max(1e-8, std::abs(g) + std::abs(numeric));
      ++result.entries_checked;
      result.per_tensor_max[t] = std::max(result.per_tensor_max[t], rel);
      if (rel > result.max_rel_error || result.worst_tensor < 0) {
        result.max_rel_error = std::max(result.max_rel_error, rel);
        result.worst_tensor = static_cast<int>(t);
        result.worst_entry = e;
      }
    }
  }
  return result;
}

}  // namespace mprec::numerics
