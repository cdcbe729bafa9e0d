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

#include "ibepair/fp.hpp"

#include "ibepair/group_order.hpp"

namespace ibepair {

PrimeField::PrimeField(mpz_class p) : p_(std::move(p)) {
  bits_ = mpz_sizeinbase(p_.get_mpz_t(), 2);
  bytes_ = (bits_ + 7) / 8;
}

PrimeFieldPtr PrimeField::create(const mpz_class& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t())) throw Error("field modulus must be an odd prime");
  if (!is_probable_prime(p)) throw Error("field modulus failed primality test");
  return PrimeFieldPtr(new PrimeField(p));
}

FpElement PrimeField::element(const mpz_class& value) const {
  mpz_class v;
  mpz_mod(v.get_mpz_t(), value.get_mpz_t(), p_.get_mpz_t());
  return FpElement(shared_from_this(), std::move(v));
}

FpElement PrimeField::zero() const { return FpElement(shared_from_this(), 0); }
FpElement PrimeField::one() const { return FpElement(shared_from_this(), 1); }

FpElement PrimeField::from_bytes(ByteView data) const {
  if (data.size() != bytes_)
    throw ParseError("field element has wrong width: expected " + std::to_string(bytes_) +
                         " bytes, got " + std::to_string(data.size()),
                     0);
  mpz_class v;
  mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
  if (v >= p_) throw ParseError("field element not in canonical reduced form", 0);
  return FpElement(shared_from_this(), std::move(v));
}

void require_same_field(const FpElement& a, const FpElement& b) {
  if (a.field() == b.field()) return;
  if (a.field()->modulus() == b.field()->modulus()) return;
  throw FieldMismatchError("operation on elements of different prime fields");
}

FpElement FpElement::operator+(const FpElement& o) const {
  require_same_field(*this, o);
  mpz_class r = v_ + o.v_;
  if (r >= field_->modulus()) r -= field_->modulus();
  return FpElement(field_, std::move(r));
}

FpElement FpElement::operator-(const FpElement& o) const {
  require_same_field(*this, o);
  mpz_class r = v_ - o.v_;
  if (r < 0) r += field_->modulus();
  return FpElement(field_, std::move(r));
}

FpElement FpElement::operator*(const FpElement& o) const {
  require_same_field(*this, o);
  mpz_class r = v_ * o.v_;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), field_->modulus().get_mpz_t());
  return FpElement(field_, std::move(r));
}

FpElement FpElement::operator-() const {
  if (is_zero()) return *this;
  mpz_class r = field_->modulus() - v_;
  return FpElement(field_, std::move(r));
}

FpElement FpElement::square() const {
  mpz_class r = v_ * v_;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), field_->modulus().get_mpz_t());
  return FpElement(field_, std::move(r));
}

FpElement FpElement::inv() const {
  if (is_zero()) throw DivisionByZeroError("inverse of zero in F_p");
  mpz_class r;
  mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), field_->modulus().get_mpz_t());
  return FpElement(field_, std::move(r));
}

FpElement FpElement::pow(const mpz_class& e) const {
  if (e < 0) throw Error("negative exponent");
  if (e == 0) return one();  // 0^0 = 1
  mpz_class r;
  mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), field_->modulus().get_mpz_t());
  return FpElement(field_, std::move(r));
}

FpElement FpElement::cube_root() const {
  const mpz_class& p = field_->modulus();
  if (mpz_fdiv_ui(p.get_mpz_t(), 3) != 2)
    throw Error("cube root requires p = 2 (mod 3)");
  mpz_class e = (2 * p - 1) / 3;
  return pow(e);
}

bool FpElement::operator==(const FpElement& o) const {
  require_same_field(*this, o);
  return v_ == o.v_;
}

Bytes FpElement::to_bytes() const {
  Bytes out(field_->byte_length(), 0);
  if (v_ != 0) {
    const std::size_t nbytes = (mpz_sizeinbase(v_.get_mpz_t(), 2) + 7) / 8;
    std::size_t count = 0;
    mpz_export(out.data() + out.size() - nbytes, &count, 1, 1, 1, 0, v_.get_mpz_t());
  }
  return out;
}

}  // namespace ibepair
