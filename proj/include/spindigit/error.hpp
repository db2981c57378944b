// Copyright 2026 The spindigit Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spindigit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A requested size exceeds a configured memory ceiling.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// A qubit or element index is out of range.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// Inputs violate a documented precondition or invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based.
class ParseError : public Error {
  public:
    ParseError(const std::string &message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Input is well-formed but uses a construct outside the supported subset.
class UnsupportedError : public Error {
  public:
    UnsupportedError(const std::string &construct, std::size_t line)
        : Error("unsupported construct '" + construct + "' at line " +
                std::to_string(line)),
          construct_(construct) {}

    [[nodiscard]] const std::string &construct() const noexcept {
        return construct_;
    }

  private:
    std::string construct_;
};

/// A normalizer vanished (flat series).
class DegenerateSeriesError : public Error {
  public:
    using Error::Error;
};

/// An iterative method could not reach the requested tolerance.
class ToleranceError : public Error {
  public:
    ToleranceError(const std::string &message, double estimate)
        : Error(message + " (error estimate " + std::to_string(estimate) + ")"),
          estimate_(estimate) {}

    [[nodiscard]] double estimate() const noexcept { return estimate_; }

  private:
    double estimate_;
};

} // namespace spindigit
