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

#include "mprec/numerics/ops.h"

#include <algorithm>
#include <cmath>

namespace mprec::numerics {

Vector Affine(const Matrix& w, const Vector& x, const Vector& b) {
  if (w.cols() != x.size() || w.rows() != b.size()) {
    throw DimensionError("affine: W " + ShapeOf(w) + " incompatible with x " +
                         ShapeOf(x) + " and b " + ShapeOf(b));
  }
  return w * x + b;
}

Vector Relu(const Vector& x) { return x.cwiseMax(0.0); }

Vector Softmax(const Vector& x) {
  if (x.size() == 0) {
    throw DimensionError("softmax: empty input " + ShapeOf(x));
  }
  const Vector e = (x.array() - x.maxCoeff()).exp();
  return e / e.sum();
}

Vector Hadamard(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("hadamard: " + ShapeOf(a) + " vs " + ShapeOf(b));
  }
  return a.cwiseProduct(b);
}

Matrix TanhMap(const Matrix& x) { return x.array().tanh(); }

double Cosine(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("cosine: " + ShapeOf(u) + " vs " + ShapeOf(v));
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    throw DegenerateVectorError("cosine: zero-norm argument");
  }
  // Rounding can push |c| a hair past 1.
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

Matrix Outer(const Vector& a, const Vector& b) { return a * b.transpose(); }

Vector RowMeans(const Matrix& x) { return x.rowwise().mean(); }

Vector ColMeans(const Matrix& x) { return x.colwise().mean().transpose(); }

BceValue ClampedBce(double score, double target, double eps) {
  const double y = std::clamp(score, eps, 1.0 - eps);
  BceValue out;
  out.loss = -(target * std::log(y) + (1.0 - target) * std::log1p(-y));
  const bool clamped = score <= eps || score >= 1.0 - eps;
  out.grad = clamped ? 0.0 : -(target / y - (1.0 - target) / (1.0 - y));
  return out;
}

}  // namespace mprec::numerics
