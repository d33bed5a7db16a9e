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

// Little-endian primitives shared by the on-disk formats.

#ifndef MPREC_BINARY_IO_H_
#define MPREC_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "mprec/errors.h"

namespace mprec::binary {

template <typename U>
void WriteUnsigned(std::ostream& out, U value) {
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes, sizeof(U));
}

template <typename U>
U ReadUnsigned(std::istream& in, std::string_view what) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) {
    throw CheckpointError("truncated input while reading " + std::string(what));
  }
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(bytes[i]) << (8 * i);
  }
  return value;
}

inline void WriteF64(std::ostream& out, double v) {
  WriteUnsigned(out, std::bit_cast<std::uint64_t>(v));
}

inline double ReadF64(std::istream& in, std::string_view what) {
  return std::bit_cast<double>(ReadUnsigned<std::uint64_t>(in, what));
}

// u32 byte length followed by the bytes.
inline void WriteString(std::ostream& out, std::string_view s) {
  WriteUnsigned(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string ReadString(std::istream& in, std::string_view what,
                              std::uint32_t max_len = 1u << 30) {
  const auto len = ReadUnsigned<std::uint32_t>(in, what);
  if (len > max_len) {
    throw CheckpointError("implausible length " + std::to_string(len) +
                          " for " + std::string(what));
  }
  std::string s(len, '\0');
  if (len > 0 && !in.read(s.data(), len)) {
    throw CheckpointError("truncated input while reading " + std::string(what));
  }
  return s;
}

}  // namespace mprec::binary

#endif  // MPREC_BINARY_IO_H_
