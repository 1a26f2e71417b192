// Copyright 2026 The zpi Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace zpi {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag ("DomainMismatch", "NotAcyclic", ...) that the CLI
/// copies into its structured error output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DomainMismatch : Error {
  explicit DomainMismatch(const std::string& what) : Error("DomainMismatch", what) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& what) : Error("DivisionByZero", what) {}
};

struct NotInvertible : Error {
  explicit NotInvertible(const std::string& what) : Error("NotInvertible", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error("InvalidInput", what) {}
};

struct NotAcyclic : Error {
  explicit NotAcyclic(const std::string& what) : Error("NotAcyclic", what) {}
};

struct NoSolution : Error {
  explicit NoSolution(const std::string& what) : Error("NoSolution", what) {}
};

struct PreconditionFailed : Error {
  explicit PreconditionFailed(const std::string& what) : Error("PreconditionFailed", what) {}
};

struct Degenerate : Error {
  explicit Degenerate(const std::string& what) : Error("Degenerate", what) {}
};

struct ResourceLimit : Error {
  explicit ResourceLimit(const std::string& what) : Error("ResourceLimit", what) {}
};

}  // namespace zpi
