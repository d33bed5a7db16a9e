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

#ifndef MPREC_DATA_INTERACTION_MATRIX_H_
#define MPREC_DATA_INTERACTION_MATRIX_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mprec/data/ratings.h"
#include "mprec/data/split.h"
#include "mprec/numerics/matrix.h"

namespace mprec::data {

// User x item matrix holding the explicit rating at every training pair and
// 0 elsewhere. Stored twice, row-compressed (user rows feed the user tower)
// and column-compressed (item columns feed the item tower).
class InteractionMatrix {
 public:
  InteractionMatrix() = default;
  // Entries with a zero rating are not stored.
  InteractionMatrix(std::int32_t rows, std::int32_t cols,
                    std::span<const Rating> entries);

  std::int32_t rows() const { return rows_; }
  std::int32_t cols() const { return cols_; }
  std::size_t nnz() const { return row_cols_.size(); }

  double at(std::int32_t user, std::int32_t item) const;

  std::span<const std::int32_t> RowIndices(std::int32_t user) const;
  std::span<const double> RowValues(std::int32_t user) const;
  std::span<const std::int32_t> ColIndices(std::int32_t item) const;
  std::span<const double> ColValues(std::int32_t item) const;

  numerics::Matrix ToDense() const;
  static InteractionMatrix FromDense(const numerics::Matrix& dense);

 private:
  std::int32_t rows_ = 0;
  std::int32_t cols_ = 0;
  std::vector<std::size_t> row_offsets_ = {0};
  std::vector<std::int32_t> row_cols_;
  std::vector<double> row_values_;
  std::vector<std::size_t> col_offsets_ = {0};
  std::vector<std::int32_t> col_rows_;
  std::vector<double> col_values_;
};

// Training positives only; dev and test pairs stay 0.
InteractionMatrix BuildInteractionMatrix(const SplitSet& split);

// Binary layout, little-endian: "MPIM", u32 version (1), u64 rows, u64 cols,
// then rows·cols f64 values row-major.
void WriteInteractionMatrix(const std::filesystem::path& path,
                            const InteractionMatrix& matrix);
InteractionMatrix ReadInteractionMatrix(const std::filesystem::path& path);

}  // namespace mprec::data

#endif  // MPREC_DATA_INTERACTION_MATRIX_H_
