// Copyright 2026 The Multiport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace multiport {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text or command-line value.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A device, graph, or schedule description that violates its invariants.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes that do not fit together (matrix size vs. port count).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Photon number exceeds the configured Fock-space capacity.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Iterative or series computation that did not settle.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A value that cannot be represented in exact arithmetic.
class ExactnessError : public Error {
 public:
  using Error::Error;
};

/// A conservation law or algebraic identity that failed at runtime.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace multiport
