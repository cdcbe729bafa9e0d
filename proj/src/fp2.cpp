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

#include "ibepair/fp2.hpp"

namespace ibepair {

Fp2Element::Fp2Element(FpElement a, FpElement b) : a_(std::move(a)), b_(std::move(b)) {
  require_same_field(a_, b_);
}

Fp2Element Fp2Element::from_fp(const FpElement& a) { return Fp2Element(a, a.zero()); }

Fp2Element Fp2Element::operator+(const Fp2Element& o) const {
  return Fp2Element(a_ + o.a_, b_ + o.b_);
}

Fp2Element Fp2Element::operator-(const Fp2Element& o) const {
  return Fp2Element(a_ - o.a_, b_ - o.b_);
}

Fp2Element Fp2Element::operator*(const Fp2Element& o) const {
  // Karatsuba with i^2 = -1: (a+bi)(c+di) = (ac - bd) + ((a+b)(c+d) - ac - bd)i
  FpElement ac = a_ * o.a_;
  FpElement bd = b_ * o.b_;
  FpElement cross = (a_ + b_) * (o.a_ + o.b_) - ac - bd;
  return Fp2Element(ac - bd, std::move(cross));
}

Fp2Element Fp2Element::operator-() const { return Fp2Element(-a_, -b_); }

Fp2Element Fp2Element::square() const {
  // (a+bi)^2 = (a+b)(a-b) + 2ab i
  FpElement re = (a_ + b_) * (a_ - b_);
  FpElement ab = a_ * b_;
  return Fp2Element(std::move(re), ab + ab);
}

Fp2Element Fp2Element::conjugate() const { return Fp2Element(a_, -b_); }

Fp2Element Fp2Element::mul_fp(const FpElement& s) const {
  return Fp2Element(a_ * s, b_ * s);
}

FpElement Fp2Element::norm() const { return a_.square() + b_.square(); }

Fp2Element Fp2Element::inv() const {
  if (is_zero()) throw DivisionByZeroError("inverse of zero in F_p^2");
  FpElement n = norm().inv();
  return Fp2Element(a_ * n, (-b_) * n);
}

Fp2Element Fp2Element::pow(const mpz_class& e) const {
  if (e < 0) throw Error("negative exponent");
  Fp2Element result = one();
  if (e == 0) return result;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result.square();
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

Fp2Element Fp2Element::zero() const { return Fp2Element(a_.zero(), a_.zero()); }
Fp2Element Fp2Element::one() const { return Fp2Element(a_.one(), a_.zero()); }

bool Fp2Element::operator==(const Fp2Element& o) const { return a_ == o.a_ && b_ == o.b_; }

Bytes Fp2Element::to_bytes() const { return concat({as_view(a_.to_bytes()), as_view(b_.to_bytes())}); }

Fp2Element Fp2Element::from_bytes(const PrimeFieldPtr& field, ByteView data) {
  const std::size_t w = field->byte_length();
  if (data.size() != 2 * w) throw ParseError("Fp2 element has wrong width", 0);
  return Fp2Element(field->from_bytes(data.subspan(0, w)), field->from_bytes(data.subspan(w)));
}

Fp2Element fp2_zero(const PrimeFieldPtr& field) {
  return Fp2Element(field->zero(), field->zero());
}

Fp2Element fp2_one(const PrimeFieldPtr& field) { return Fp2Element(field->one(), field->zero()); }

Fp2Element fp2_i(const PrimeFieldPtr& field) { return Fp2Element(field->zero(), field->one()); }

Fp2Element find_order3_element(const PrimeFieldPtr& field) {
  const mpz_class& p = field->modulus();
  mpz_class group = p * p - 1;
  if (mpz_divisible_ui_p(group.get_mpz_t(), 3) == 0)
    throw Error("3 does not divide p^2 - 1");
  mpz_class e = group / 3;
  Fp2Element one = fp2_one(field);
  for (mpz_class k = 0;; ++k) {
    Fp2Element u(field->element(k), field->one());
    Fp2Element z = u.pow(e);
    if (z != one && !z.is_zero()) return z;
  }
}

}  // namespace ibepair
