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

#ifndef MPREC_NUMERICS_MATRIX_H_
#define MPREC_NUMERICS_MATRIX_H_

#include <Eigen/Core>
#include <string>

#include "mprec/errors.h"

namespace mprec::numerics {

// Dense 64-bit matrix stored row-major, so that `data()` is the on-disk
// value order. Batched activations use one row per example.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline std::string ShapeOf(const Matrix& m) {
  return ShapeString(m.rows(), m.cols());
}

inline std::string ShapeOf(const Vector& v) {
  return ShapeString(v.size(), 1);
}

}  // namespace mprec::numerics

#endif  // MPREC_NUMERICS_MATRIX_H_
