// Copyright 2026 The ibepair Authors
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

namespace ibepair {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary operation on elements of two different prime fields.
class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

class NotOnCurveError : public Error {
 public:
  using Error::Error;
};

// map_to_point produced the point at infinity after cofactor clearing;
// callers retry with the next hash counter.
class DegeneratePointError : public Error {
 public:
  using Error::Error;
};

// A Miller-loop line or vertical vanished at the evaluation point.
class ZeroEvaluationError : public Error {
 public:
  using Error::Error;
};

class SearchBudgetError : public Error {
 public:
  using Error::Error;
};

// Malformed input; `offset` is a byte offset for binary formats and a
// 1-based line number for line-based text formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  explicit ParseError(const std::string& msg) : Error(msg), offset_(0) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class AuthenticationError : public Error {
 public:
  using Error::Error;
};

// Cryptographic check failed (e.g. an extracted key does not satisfy the
// pairing equation).
class VerificationError : public Error {
 public:
  using Error::Error;
};

// Protocol operation attempted from a device state that forbids it.
class StateError : public Error {
 public:
  using Error::Error;
};

class EntropyError : public Error {
 public:
  using Error::Error;
};

// Payload too large for the requested mode; callers should switch to the
// hybrid/bulk path.
class OversizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace ibepair
