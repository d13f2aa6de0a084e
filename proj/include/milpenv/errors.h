// Copyright 2026 The milpenv Authors
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

#ifndef MILPENV_ERRORS_H_
#define MILPENV_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace milpenv {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Problem failed validation where a valid one was required.
class InvalidProblemError : public Error {
 public:
  using Error::Error;
};

// Malformed LP text. Line and column are 1-based.
class LpParseError : public Error {
 public:
  LpParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// LP text that is well formed but uses a construct outside the supported
// subset (quadratic terms, SOS, indicators, semi-continuous...).
class UnsupportedFeatureError : public LpParseError {
 public:
  using LpParseError::LpParseError;
};

// The simplex factorization broke down on this instance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The root LP relaxation is unbounded; branch-and-bound cannot proceed.
class UnboundedRelaxationError : public Error {
 public:
  using Error::Error;
};

// An action outside the delivered action set.
class InvalidActionError : public Error {
 public:
  using Error::Error;
};

// Operation called in a phase where it is not allowed (stepping a finished
// episode, branching a finished solver...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Unknown parameter name or value out of its documented range.
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// A trace document that does not match the trace schema. The message names
// the offending JSON path.
class TraceFormatError : public Error {
 public:
  using Error::Error;
};

// Reward expression text that does not parse. Position is a 0-based offset.
class RewardParseError : public Error {
 public:
  RewardParseError(const std::string& message, std::size_t position)
      : Error("at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace milpenv

#endif  // MILPENV_ERRORS_H_
