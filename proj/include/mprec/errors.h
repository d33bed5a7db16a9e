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

#ifndef MPREC_ERRORS_H_
#define MPREC_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mprec {

// Base of every error raised by the library. `kind()` is a short stable tag
// ("dimension", "io", ...) that the command-line tool prints as a
// machine-parsable prefix.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message);
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error("dimension", message) {}
};

// Cosine of a zero-norm vector.
class DegenerateVectorError : public Error {
 public:
  explicit DegenerateVectorError(const std::string& message)
      : Error("degenerate-vector", message) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& message) : Error("index", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

// Dataset-level failures: empty result, unmet preconditions, exhausted
// sampling pools.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message) : Error("data", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error("config", message) {}
};

class CheckpointError : public Error {
 public:
  explicit CheckpointError(const std::string& message)
      : Error("checkpoint", message) {}
};

// A caller broke an API precondition (e.g. backward from a non-scalar node).
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& message)
      : Error("contract", message) {}
};

// "[3 x 4]"
std::string ShapeString(std::int64_t rows, std::int64_t cols);

}  // namespace mprec

#endif  // MPREC_ERRORS_H_
