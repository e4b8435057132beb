// Copyright 2026 The simrefine Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef SIMREFINE_ERROR_HPP
#define SIMREFINE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace simrefine {

enum class ErrorKind {
  kConfig,     // malformed or inconsistent configuration
  kBounds,     // parameter outside its search-space bounds
  kDomain,     // argument outside the mathematical domain of an operation
  kShape,      // mismatched sizes or dimensions
  kIngestion,  // unreadable or corrupt input video
  kNumerical,  // instability, degeneracy, failed factorization
  kIo,         // filesystem failure
};

// All errors thrown by the library derive from this type. The kind decides
// the process exit code used by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class BoundsError : public Error {
 public:
  BoundsError(std::string parameter, const std::string& what)
      : Error(ErrorKind::kBounds, what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kDomain, what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what)
      : Error(ErrorKind::kShape, what) {}
};

class IngestionError : public Error {
 public:
  explicit IngestionError(const std::string& what)
      : Error(ErrorKind::kIngestion, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::kNumerical, what) {}
};

// Non-finite simulation state. `step` is the global integration step index.
class InstabilityError : public NumericalError {
 public:
  InstabilityError(long step, const std::string& what)
      : NumericalError(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

// Zero-area triangle met while evaluating hinge forces.
class DegenerateTriangleError : public NumericalError {
 public:
  DegenerateTriangleError(int triangle, const std::string& what)
      : NumericalError(what), triangle_(triangle) {}
  int triangle() const noexcept { return triangle_; }

 private:
  int triangle_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

// Process exit code for an error kind: 2 config, 3 ingestion, 4 numerical,
// 1 for anything else.
int ExitCodeFor(ErrorKind kind) noexcept;

}  // namespace simrefine

#endif  // SIMREFINE_ERROR_HPP
