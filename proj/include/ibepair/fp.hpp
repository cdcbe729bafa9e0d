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

#include <gmpxx.h>

#include <cstddef>
#include <memory>

#include "ibepair/bytes.hpp"
#include "ibepair/errors.hpp"

namespace ibepair {

class FpElement;
class PrimeField;
using PrimeFieldPtr = std::shared_ptr<const PrimeField>;

// Context for arithmetic mod an odd prime p. Elements carry a pointer to
// their field, and binary operations on elements of different fields throw
// FieldMismatchError. Immutable after construction; safe to share across
// threads.
class PrimeField : public std::enable_shared_from_this<PrimeField> {
 public:
  // p must pass a 64-round probabilistic primality test.
  static PrimeFieldPtr create(const mpz_class& p);

  const mpz_class& modulus() const { return p_; }
  std::size_t bit_length() const { return bits_; }
  // Width of the canonical fixed-width big-endian serialization.
  std::size_t byte_length() const { return bytes_; }

  FpElement element(const mpz_class& value) const;  // reduced mod p
  FpElement zero() const;
  FpElement one() const;

  // Canonical deserialization; the input must be exactly byte_length() wide
  // and decode to a value < p.
  FpElement from_bytes(ByteView data) const;

 private:
  explicit PrimeField(mpz_class p);

  mpz_class p_;
  std::size_t bits_;
  std::size_t bytes_;
};

// An element of F_p in canonical reduced form (0 <= value < p).
// Value type: immutable, cheap to copy relative to the arithmetic itself.
class FpElement {
 public:
  const mpz_class& value() const { return v_; }
  const PrimeFieldPtr& field() const { return field_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  FpElement operator+(const FpElement& o) const;
  FpElement operator-(const FpElement& o) const;
  FpElement operator*(const FpElement& o) const;
  FpElement operator-() const;
  FpElement square() const;

  // Multiplicative inverse; throws DivisionByZeroError on zero.
  FpElement inv() const;

  // a^e by square-and-multiply, e >= 0. 0^0 is defined as 1.
  FpElement pow(const mpz_class& e) const;

  // Unique cube root, valid because p = 2 (mod 3) makes cubing a bijection;
  // computed as a^((2p-1)/3).
  FpElement cube_root() const;

  // Same-field constants, for generic code that only holds elements.
  FpElement zero() const { return FpElement(field_, 0); }
  FpElement one() const { return FpElement(field_, 1); }

  bool operator==(const FpElement& o) const;
  bool operator!=(const FpElement& o) const { return !(*this == o); }

  // Fixed-width big-endian serialization (byte_length() of the field).
  Bytes to_bytes() const;

 private:
  friend class PrimeField;
  FpElement(PrimeFieldPtr field, mpz_class reduced_value)
      : field_(std::move(field)), v_(std::move(reduced_value)) {}

  PrimeFieldPtr field_;
  mpz_class v_;
};

// Throws FieldMismatchError unless a and b live in the same field.
void require_same_field(const FpElement& a, const FpElement& b);

}  // namespace ibepair
