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

#include "mprec/data/interaction_matrix.h"

#include <algorithm>
#include <fstream>
#include <string>
#include <tuple>

#include "mprec/binary_io.h"
#include "mprec/errors.h"

namespace mprec::data {
namespace {

constexpr char kMagic[4] = {'M', 'P', 'I', 'M'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

InteractionMatrix::InteractionMatrix(std::int32_t rows, std::int32_t cols,
                                     std::span<const Rating> entries)
    : rows_(rows), cols_(cols) {
  std::vector<Rating> sorted;
  sorted.reserve(entries.size());
  for (const Rating& r : entries) {
    if (r.user < 0 || r.user >= rows || r.item < 0 || r.item >= cols) {
      throw IndexError("interaction (" + std::to_string(r.user) + ", " +
                       std::to_string(r.item) + ") outside " +
                       ShapeString(rows, cols));
    }
    if (r.rating != 0.0) sorted.push_back(r);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Rating& a, const Rating& b) {
    return std::tie(a.user, a.item) < std::tie(b.user, b.item);
  });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k].user == sorted[k - 1].user && sorted[k].item == sorted[k - 1].item) {
      throw DataError("duplicate interaction (" + std::to_string(sorted[k].user) +
                      ", " + std::to_string(sorted[k].item) + ")");
    }
  }

  row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
  for (const Rating& r : sorted) ++row_offsets_[r.user + 1];
  for (std::int32_t u = 0; u < rows; ++u) row_offsets_[u + 1] += row_offsets_[u];
  row_cols_.reserve(sorted.size());
  row_values_.reserve(sorted.size());
  for (const Rating& r : sorted) {
    row_cols_.push_back(r.item);
    row_values_.push_back(r.rating);
  }

  col_offsets_.assign(static_cast<std::size_t>(cols) + 1, 0);
  for (const Rating& r : sorted) ++col_offsets_[r.item + 1];
  for (std::int32_t i = 0; i < cols; ++i) col_offsets_[i + 1] += col_offsets_[i];
  col_rows_.resize(sorted.size());
  col_values_.resize(sorted.size());
  std::vector<std::size_t> cursor(col_offsets_.begin(), col_offsets_.end() - 1);
  // Row-major traversal keeps each column's users sorted.
  for (const Rating& r : sorted) {
    const std::size_t at = cursor[r.item]++;
    col_rows_[at] = r.user;
    col_values_[at] = r.rating;
  }
}

double InteractionMatrix::at(std::int32_t user, std::int32_t item) const {
  const auto idx = RowIndices(user);
  const auto it = std::lower_bound(idx.begin(), idx.end(), item);
  if (it == idx.end() || *it != item) return 0.0;
  return RowValues(user)[static_cast<std::size_t>(it - idx.begin())];
}

std::span<const std::int32_t> InteractionMatrix::RowIndices(std::int32_t user) const {
  if (user < 0 || user >= rows_) {
    throw IndexError("user " + std::to_string(user) + " outside [0, " +
                     std::to_string(rows_) + ")");
  }
  return {row_cols_.data() + row_offsets_[user],
          row_offsets_[user + 1] - row_offsets_[user]};
}

std::span<const double> InteractionMatrix::RowValues(std::int32_t user) const {
  RowIndices(user);
  return {row_values_.data() + row_offsets_[user],
          row_offsets_[user + 1] - row_offsets_[user]};
}

std::span<const std::int32_t> InteractionMatrix::ColIndices(std::int32_t item) const {
  if (item < 0 || item >= cols_) {
    throw IndexError("item " + std::to_string(item) + " outside [0, " +
                     std::to_string(cols_) + ")");
  }
  return {col_rows_.data() + col_offsets_[item],
          col_offsets_[item + 1] - col_offsets_[item]};
}

std::span<const double> InteractionMatrix::ColValues(std::int32_t item) const {
  ColIndices(item);
  return {col_values_.data() + col_offsets_[item],
          col_offsets_[item + 1] - col_offsets_[item]};
}

numerics::Matrix InteractionMatrix::ToDense() const {
  numerics::Matrix out = numerics::Matrix::Zero(rows_, cols_);
  for (std::int32_t u = 0; u < rows_; ++u) {
    const auto idx = RowIndices(u);
    const auto val = RowValues(u);
    for (std::size_t k = 0; k < idx.size(); ++k) out(u, idx[k]) = val[k];
  }
  return out;
}

InteractionMatrix InteractionMatrix::FromDense(const numerics::Matrix& dense) {
  std::vector<Rating> entries;
  for (numerics::Index u = 0; u < dense.rows(); ++u) {
    for (numerics::Index i = 0; i < dense.cols(); ++i) {
      if (dense(u, i) != 0.0) {
        entries.push_back({static_cast<std::int32_t>(u), static_cast<std::int32_t>(i),
                           dense(u, i), 0});
      }
    }
  }
  return InteractionMatrix(static_cast<std::int32_t>(dense.rows()),
                           static_cast<std::int32_t>(dense.cols()), entries);
}

InteractionMatrix BuildInteractionMatrix(const SplitSet& split) {
  return InteractionMatrix(split.num_users, split.num_items, split.train);
}

void WriteInteractionMatrix(const std::filesystem::path& path,
                            const InteractionMatrix& matrix) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kMagic, 4);
  binary::WriteUnsigned(out, kVersion);
  binary::WriteUnsigned(out, static_cast<std::uint64_t>(matrix.rows()));
  binary::WriteUnsigned(out, static_cast<std::uint64_t>(matrix.cols()));
  std::vector<double> row(static_cast<std::size_t>(matrix.cols()));
  for (std::int32_t u = 0; u < matrix.rows(); ++u) {
    std::fill(row.begin(), row.end(), 0.0);
    const auto idx = matrix.RowIndices(u);
    const auto val = matrix.RowValues(u);
    for (std::size_t k = 0; k < idx.size(); ++k) row[idx[k]] = val[k];
    for (double v : row) binary::WriteF64(out, v);
  }
  if (!out) throw IoError("failed writing " + path.string());
}

InteractionMatrix ReadInteractionMatrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) {
    throw CheckpointError(path.string() + ": not an interaction matrix file");
  }
  const auto version = binary::ReadUnsigned<std::uint32_t>(in, "version");
  if (version != kVersion) {
    throw CheckpointError(path.string() + ": unsupported version " +
                          std::to_string(version));
  }
  const auto rows = binary::ReadUnsigned<std::uint64_t>(in, "rows");
  const auto cols = binary::ReadUnsigned<std::uint64_t>(in, "cols");
  if (rows > (1u << 30) || cols > (1u << 30)) {
    throw CheckpointError(path.string() + ": implausible shape " +
                          ShapeString(static_cast<std::int64_t>(rows),
                                      static_cast<std::int64_t>(cols)));
  }
  std::vector<Rating> entries;
  for (std::uint64_t u = 0; u < rows; ++u) {
    for (std::uint64_t i = 0; i < cols; ++i) {
      const double v = binary::ReadF64(in, "matrix values");
      if (v != 0.0) {
        entries.push_back({static_cast<std::int32_t>(u), static_cast<std::int32_t>(i), v, 0});
      }
    }
  }
  return InteractionMatrix(static_cast<std::int32_t>(rows),
                           static_cast<std::int32_t>(cols), entries);
}

}  // namespace mprec::data
