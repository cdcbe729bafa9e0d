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

#include "ibepair/fp.hpp"

namespace ibepair {

// An element a + b*i of F_p^2 = F_p[i]/(i^2 + 1). The representation is valid
// because every curve-bearing prime here satisfies p = 3 (mod 4), making -1 a
// quadratic non-residue. Both parts are kept canonical.
class Fp2Element {
 public:
  Fp2Element(FpElement a, FpElement b);
  static Fp2Element from_fp(const FpElement& a);

  const FpElement& re() const { return a_; }
  const FpElement& im() const { return b_; }
  const PrimeFieldPtr& field() const { return a_.field(); }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero(); }

  Fp2Element operator+(const Fp2Element& o) const;
  Fp2Element operator-(const Fp2Element& o) const;
  Fp2Element operator*(const Fp2Element& o) const;
  Fp2Element operator-() const;
  Fp2Element square() const;
  Fp2Element conjugate() const;

  // Scalar action of F_p; cheaper than promoting the scalar.
  Fp2Element mul_fp(const FpElement& s) const;

  // Norm a^2 + b^2 (an F_p element).
  FpElement norm() const;

  // Inverse via conjugate / norm; throws DivisionByZeroError on zero.
  Fp2Element inv() const;

  // Square-and-multiply, e >= 0; 0^0 defined as 1.
  Fp2Element pow(const mpz_class& e) const;

  Fp2Element zero() const;
  Fp2Element one() const;

  bool operator==(const Fp2Element& o) const;
  bool operator!=(const Fp2Element& o) const { return !(*this == o); }

  // Canonical serialization: re || im, each fixed width.
  Bytes to_bytes() const;
  static Fp2Element from_bytes(const PrimeFieldPtr& field, ByteView data);

 private:
  FpElement a_;
  FpElement b_;
};

Fp2Element fp2_zero(const PrimeFieldPtr& field);
Fp2Element fp2_one(const PrimeFieldPtr& field);
Fp2Element fp2_i(const PrimeFieldPtr& field);

// A primitive cube root of unity zeta (zeta^3 = 1, zeta != 1), found as
// u^((p^2-1)/3) for the candidates u = k + i, k = 0, 1, 2, ... — the first
// non-identity result wins, so the choice is deterministic per field. Exists
// whenever 3 | p + 1.
Fp2Element find_order3_element(const PrimeFieldPtr& field);

}  // namespace ibepair
