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

#include "mprec/cli/checkpoint.h"

#include <fstream>
#include <sstream>
#include <string>

#include "mprec/binary_io.h"
#include "mprec/errors.h"

namespace mprec::cli {
namespace {

constexpr char kMagic[4] = {'M', 'P', 'R', 'C'};

}  // namespace

void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  if (checkpoint.params.names.size() != checkpoint.params.tensors.size()) {
    throw CheckpointError("parameter names and tensors differ in count");
  }
  std::ostringstream buf(std::ios::binary);
  buf.write(kMagic, 4);
  binary::WriteUnsigned(buf, kCheckpointVersion);
  binary::WriteString(buf, checkpoint.meta.dump());
  binary::WriteUnsigned(buf, static_cast<std::uint32_t>(checkpoint.params.tensors.size()));
  for (std::size_t k = 0; k < checkpoint.params.tensors.size(); ++k) {
    const model::Matrix& m = checkpoint.params.tensors[k];
    binary::WriteString(buf, checkpoint.params.names[k]);
    binary::WriteUnsigned(buf, static_cast<std::uint64_t>(m.rows()));
    binary::WriteUnsigned(buf, static_cast<std::uint64_t>(m.cols()));
    const double* data = m.data();
    for (Eigen::Index e = 0; e < m.size(); ++e) binary::WriteF64(buf, data[e]);
  }
  // Write to a sibling and rename so a crash never leaves a torn file.
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << buf.str();
    if (!out.flush()) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  try {
    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4)) {
      throw CheckpointError("not a checkpoint (bad magic)");
    }
    const auto version = binary::ReadUnsigned<std::uint32_t>(in, "version");
    if (version != kCheckpointVersion) {
      throw CheckpointError("unsupported checkpoint version " + std::to_string(version) +
                            " (expected " + std::to_string(kCheckpointVersion) + ")");
    }
    Checkpoint ck;
    const std::string meta = binary::ReadString(in, "config");
    try {
      ck.meta = nlohmann::json::parse(meta);
    } catch (const nlohmann::json::exception& e) {
      throw CheckpointError(std::string("embedded config is not JSON: ") + e.what());
    }
    const auto count = binary::ReadUnsigned<std::uint32_t>(in, "tensor count");
    for (std::uint32_t k = 0; k < count; ++k) {
      std::string name = binary::ReadString(in, "tensor name", 1u << 12);
      const auto rows = binary::ReadUnsigned<std::uint64_t>(in, "rows of " + name);
      const auto cols = binary::ReadUnsigned<std::uint64_t>(in, "cols of " + name);
      if (rows > (1u << 24) || cols > (1u << 24) || rows * cols > (1ull << 31)) {
        throw CheckpointError("implausible shape for " + name);
      }
      model::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
      double* data = m.data();
      for (Eigen::Index e = 0; e < m.size(); ++e) data[e] = binary::ReadF64(in, name);
      ck.params.names.push_back(std::move(name));
      ck.params.tensors.push_back(std::move(m));
    }
    if (in.peek() != std::char_traits<char>::eof()) {
      throw CheckpointError("trailing bytes after the last tensor");
    }
    try {
      model::CheckParams(CheckpointModelConfig(ck), ck.params);
    } catch (const DimensionError& e) {
      throw CheckpointError(e.what());
    }
    return ck;
  } catch (const CheckpointError& e) {
    throw CheckpointError(path.string() + ": " + e.what());
  }
}

model::ModelConfig CheckpointModelConfig(const Checkpoint& checkpoint) {
  if (!checkpoint.meta.contains("model")) {
    throw CheckpointError("embedded config lacks a model section");
  }
  try {
    return model::ModelConfigFromJson(checkpoint.meta.at("model"));
  } catch (const ConfigError& e) {
    throw CheckpointError(e.what());
  }
}

}  // namespace mprec::cli
