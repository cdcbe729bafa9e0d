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

#include <optional>
#include <utility>

#include "ibepair/entropy.hpp"
#include "ibepair/fp.hpp"
#include "ibepair/fp2.hpp"
#include "ibepair/group_order.hpp"

namespace ibepair {

// Group law on E: y^2 = x^3 + 1, templated on the coordinate field element
// (FpElement for E(F_p), Fp2Element for E(F_p^2)). All operations are pure
// functions on immutable values.

template <typename F>
class Point {
 public:
  static Point infinity() { return Point(); }
  Point(F x, F y) : c_(Coords{std::move(x), std::move(y)}) {}

  bool is_infinity() const { return !c_.has_value(); }
  const F& x() const { return c_->x; }
  const F& y() const { return c_->y; }

  bool operator==(const Point& o) const {
    if (is_infinity() || o.is_infinity()) return is_infinity() == o.is_infinity();
    return c_->x == o.c_->x && c_->y == o.c_->y;
  }
  bool operator!=(const Point& o) const { return !(*this == o); }

 private:
  Point() = default;
  struct Coords {
    F x, y;
  };
  std::optional<Coords> c_;
};

using FpPoint = Point<FpElement>;
using Fp2Point = Point<Fp2Element>;

template <typename F>
bool is_on_curve(const Point<F>& p) {
  if (p.is_infinity()) return true;
  F x = p.x();
  F y = p.y();
  return y.square() == x.square() * x + x.one();
}

template <typename F>
Point<F> point_neg(const Point<F>& p) {
  if (p.is_infinity()) return p;
  return Point<F>(p.x(), -p.y());
}

namespace detail {

// Chord/tangent law without on-curve validation, for internal hot paths.
template <typename F>
Point<F> add_unchecked(const Point<F>& p, const Point<F>& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const F& x1 = p.x();
  const F& y1 = p.y();
  const F& x2 = q.x();
  const F& y2 = q.y();
  F lambda = x1.zero();
  if (x1 == x2) {
    if ((y1 + y2).is_zero()) return Point<F>::infinity();  // q = -p (covers y = 0)
    // doubling: lambda = 3x^2 / 2y
    F xx = x1.square();
    lambda = (xx + xx + xx) * (y1 + y1).inv();
  } else {
    lambda = (y2 - y1) * (x2 - x1).inv();
  }
  F x3 = lambda.square() - x1 - x2;
  F y3 = lambda * (x1 - x3) - y1;
  return Point<F>(std::move(x3), std::move(y3));
}

template <typename F>
void require_on_curve(const Point<F>& p) {
  if (!is_on_curve(p)) throw NotOnCurveError("point does not satisfy y^2 = x^3 + 1");
}

}  // namespace detail

template <typename F>
Point<F> point_add(const Point<F>& p, const Point<F>& q) {
  detail::require_on_curve(p);
  detail::require_on_curve(q);
  return detail::add_unchecked(p, q);
}

template <typename F>
Point<F> point_double(const Point<F>& p) {
  detail::require_on_curve(p);
  return detail::add_unchecked(p, p);
}

// n*P by affine double-and-add over the bits of n; n >= 0, 0*P = O.
template <typename F>
Point<F> scalar_mul(const mpz_class& n, const Point<F>& p) {
  detail::require_on_curve(p);
  if (n == 0 || p.is_infinity()) return Point<F>::infinity();
  Point<F> acc = Point<F>::infinity();
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = detail::add_unchecked(acc, acc);
    if (mpz_tstbit(n.get_mpz_t(), i)) acc = detail::add_unchecked(acc, p);
  }
  return acc;
}

// Jacobian coordinates: (X, Y, Z) represents affine (X/Z^2, Y/Z^3); the
// infinity class (Z = 0) is carried as an empty optional.
template <typename F>
class JacobianPoint {
 public:
  static JacobianPoint infinity() { return JacobianPoint(); }
  JacobianPoint(F x, F y, F z);

  static JacobianPoint from_affine(const Point<F>& p) {
    if (p.is_infinity()) return infinity();
    return JacobianPoint(p.x(), p.y(), p.x().one());
  }

  Point<F> to_affine() const {
    if (is_infinity()) return Point<F>::infinity();
    F zi = c_->z.inv();
    F zi2 = zi.square();
    return Point<F>(c_->x * zi2, c_->y * zi2 * zi);
  }

  bool is_infinity() const { return !c_.has_value(); }
  const F& X() const { return c_->x; }
  const F& Y() const { return c_->y; }
  const F& Z() const { return c_->z; }

 private:
  JacobianPoint() = default;
  struct Coords {
    F x, y, z;
  };
  std::optional<Coords> c_;
};

template <typename F>
JacobianPoint<F>::JacobianPoint(F x, F y, F z) {
  if (z.is_zero()) return;  // the Z = 0 class is infinity
  c_ = Coords{std::move(x), std::move(y), std::move(z)};
}

template <typename F>
JacobianPoint<F> jac_double(const JacobianPoint<F>& p) {
  if (p.is_infinity()) return p;
  if (p.Y().is_zero()) return JacobianPoint<F>::infinity();  // order-2 point
  // dbl-2009-l, specialized to a = 0
  F a = p.X().square();
  F b = p.Y().square();
  F c = b.square();
  F t = (p.X() + b).square() - a - c;
  F d = t + t;
  F e = a + a + a;
  F f = e.square();
  F x3 = f - (d + d);
  F c8 = c + c;
  c8 = c8 + c8;
  c8 = c8 + c8;
  F y3 = e * (d - x3) - c8;
  F z3 = (p.Y() + p.Y()) * p.Z();
  return JacobianPoint<F>(std::move(x3), std::move(y3), std::move(z3));
}

template <typename F>
JacobianPoint<F> jac_add(const JacobianPoint<F>& p, const JacobianPoint<F>& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  F z1z1 = p.Z().square();
  F z2z2 = q.Z().square();
  F u1 = p.X() * z2z2;
  F u2 = q.X() * z1z1;
  F s1 = p.Y() * q.Z() * z2z2;
  F s2 = q.Y() * p.Z() * z1z1;
  if (u1 == u2) {
    if (s1 == s2) return jac_double(p);
    return JacobianPoint<F>::infinity();
  }
  F h = u2 - u1;
  F i = (h + h).square();
  F j = h * i;
  F r = s2 - s1;
  r = r + r;
  F v = u1 * i;
  F x3 = r.square() - j - (v + v);
  F s1j = s1 * j;
  F y3 = r * (v - x3) - (s1j + s1j);
  F z3 = ((p.Z() + q.Z()).square() - z1z1 - z2z2) * h;
  return JacobianPoint<F>(std::move(x3), std::move(y3), std::move(z3));
}

template <typename F>
JacobianPoint<F> jac_scalar_mul(const mpz_class& n, const JacobianPoint<F>& p) {
  if (n == 0 || p.is_infinity()) return JacobianPoint<F>::infinity();
  JacobianPoint<F> acc = JacobianPoint<F>::infinity();
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = jac_double(acc);
    if (mpz_tstbit(n.get_mpz_t(), i)) acc = jac_add(acc, p);
  }
  return acc;
}

// Projective scalar multiplication behind the affine contract; same results,
// one inversion total.
template <typename F>
Point<F> scalar_mul_fast(const mpz_class& n, const Point<F>& p) {
  detail::require_on_curve(p);
  return jac_scalar_mul(n, JacobianPoint<F>::from_affine(p)).to_affine();
}

// Parameters of the type-1 curve y^2 = x^3 + 1 over F_p with p = 11 (mod 12):
// supersingular, #E(F_p) = p + 1 = cofactor * q.
class CurveParams {
 public:
  // Validates the constraints, not any particular construction.
  static CurveParams create(const mpz_class& p, GroupOrder q);

  const PrimeFieldPtr& field() const { return field_; }
  const GroupOrder& order() const { return q_; }
  const mpz_class& cofactor() const { return cofactor_; }

  // Hash-to-point: x0 = cbrt(y0^2 - 1) puts (x0, y0) on the curve, then the
  // cofactor projects into the order-q subgroup. Throws DegeneratePointError
  // when clearing lands on O (the caller re-hashes with a counter).
  FpPoint map_to_point(const FpElement& y0) const;

  // A uniform-ish point of exact order q: cofactor-cleared random point,
  // redrawn while the result is O (q prime, so nothing else can go wrong).
  FpPoint random_generator(EntropySource& rng) const;

 private:
  CurveParams(PrimeFieldPtr field, GroupOrder q, mpz_class cofactor)
      : field_(std::move(field)), q_(std::move(q)), cofactor_(std::move(cofactor)) {}

  PrimeFieldPtr field_;
  GroupOrder q_;
  mpz_class cofactor_;
};

// Bit-exact point serialization: 0x00 for infinity, else 0x04 || x || y with
// the field's fixed-width coordinate form (F_p^2 coordinates as re || im).
Bytes serialize_point(const FpPoint& p);
Bytes serialize_point(const Fp2Point& p);
FpPoint parse_fp_point(ByteView data, const PrimeFieldPtr& field);
Fp2Point parse_fp2_point(ByteView data, const PrimeFieldPtr& field);

}  // namespace ibepair
