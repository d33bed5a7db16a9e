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

// Value-level kernels on single vectors. The differentiable, batched
// versions of the same primitives live in tape.h.

#ifndef MPREC_NUMERICS_OPS_H_
#define MPREC_NUMERICS_OPS_H_

#include <span>

#include "mprec/numerics/matrix.h"

namespace mprec::numerics {

// W·x + b. Throws DimensionError naming the offending shapes.
Vector Affine(const Matrix& w, const Vector& x, const Vector& b);

Vector Relu(const Vector& x);

// Max-shifted softmax. Throws DimensionError on an empty vector.
Vector Softmax(const Vector& x);

Vector Hadamard(const Vector& a, const Vector& b);

Matrix TanhMap(const Matrix& x);

// uᵀv / (‖u‖‖v‖). Throws DegenerateVectorError if either norm is zero.
double Cosine(const Vector& u, const Vector& v);

// a·bᵀ
Matrix Outer(const Vector& a, const Vector& b);

// Entry k is the mean of row k / column k.
Vector RowMeans(const Matrix& x);
Vector ColMeans(const Matrix& x);

struct BceValue {
  double loss;
  double grad;  // d loss / d score
};

// Binary cross-entropy on a score clamped into [eps, 1 - eps]. The gradient
// is zero wherever the clamp is active, including the boundary itself.
BceValue ClampedBce(double score, double target, double eps);

// tanh restricted to [0, 1]; see tanh_unit.cc. Accurate to about one ulp on
// that interval and undefined outside it.
double TanhUnit(double x);

// Vector form over a contiguous range: out[i] = TanhUnit(in[i]).
void TanhUnit(const double* in, double* out, Index n);

// Shortest odd polynomial t(x) = sum_k coeffs[k]·x^(2k+1) that matches tanh
// to about one ulp on [0, bound]: a truncated Taylor series for small
// bounds, the TanhUnit fit otherwise. Requires 0 <= bound <= 1.
std::span<const double> TanhSeriesFor(double bound);

}  // namespace mprec::numerics

#endif  // MPREC_NUMERICS_OPS_H_
