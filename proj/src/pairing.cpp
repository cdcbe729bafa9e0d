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

#include "ibepair/pairing.hpp"

#include "ibepair/hashes.hpp"

namespace ibepair {

namespace {

// a - s with s in the base field.
Fp2Element sub_fp(const Fp2Element& a, const FpElement& s) {
  return Fp2Element(a.re() - s, a.im());
}

// Miller accumulator: numerator for lines, denominator for verticals; a
// single division at the end keeps the loop inversion-free on the F_p^2 side.
struct Accumulator {
  Fp2Element num;
  Fp2Element den;

  explicit Accumulator(const PrimeFieldPtr& field)
      : num(fp2_one(field)), den(fp2_one(field)) {}

  void square() {
    num = num.square();
    den = den.square();
  }
  void mul_line(const Fp2Element& l) {
    if (l.is_zero())
      throw ZeroEvaluationError("Miller line vanished at the evaluation point");
    num = num * l;
  }
  void mul_vertical(const Fp2Element& v) {
    if (v.is_zero())
      throw ZeroEvaluationError("Miller vertical vanished at the evaluation point");
    den = den * v;
  }
  Fp2Element value() const { return num * den.inv(); }
};

// The loop's line sequence depends only on the base point; this is the whole
// precomputation story. One field inversion per step (the affine slope).
std::vector<MillerStep> build_steps(const FpPoint& p, const mpz_class& order) {
  std::vector<MillerStep> steps;
  const std::size_t bits = mpz_sizeinbase(order.get_mpz_t(), 2);
  steps.reserve(bits + static_cast<std::size_t>(mpz_popcount(order.get_mpz_t())));
  FpPoint t = p;

  auto sloped_step = [&](bool is_double, const FpPoint& anchor, const FpPoint& other) {
    // tangent when anchor == other, chord otherwise
    FpElement lambda = anchor.x().zero();
    if (anchor == other) {
      FpElement xx = anchor.x().square();
      lambda = (xx + xx + xx) * (anchor.y() + anchor.y()).inv();
    } else {
      lambda = (other.y() - anchor.y()) * (other.x() - anchor.x()).inv();
    }
    FpElement x3 = lambda.square() - anchor.x() - other.x();
    FpElement y3 = lambda * (anchor.x() - x3) - anchor.y();
    MillerStep step{is_double, false, anchor.x(), anchor.y(), lambda, x3};
    t = FpPoint(std::move(x3), std::move(y3));
    steps.push_back(std::move(step));
  };

  for (std::size_t i = bits - 1; i-- > 0;) {
    if (t.is_infinity())
      throw Error("Miller loop: base point order does not match the loop length");
    if (t.y().is_zero()) {
      // order-2 intermediate: the tangent is the vertical at T, 2T = O
      steps.push_back({true, true, t.x(), t.y(), t.y().zero(), std::nullopt});
      t = FpPoint::infinity();
    } else {
      sloped_step(true, t, t);
    }
    if (mpz_tstbit(order.get_mpz_t(), i)) {
      if (t.is_infinity())
        throw Error("Miller loop: base point order does not match the loop length");
      if (t.x() == p.x() && !(t.y() == p.y())) {
        // T = -P: the chord is the vertical at P, T + P = O
        steps.push_back({false, true, p.x(), p.y(), p.y().zero(), std::nullopt});
        t = FpPoint::infinity();
      } else {
        sloped_step(false, t, p);
      }
    }
  }
  if (!t.is_infinity()) throw Error("Miller loop: base point does not have the stated order");
  return steps;
}

Fp2Element evaluate_steps(const std::vector<MillerStep>& steps, const Fp2Point& s) {
  const Fp2Element& xs = s.x();
  const Fp2Element& ys = s.y();
  Accumulator acc(xs.field());
  for (const MillerStep& step : steps) {
    if (step.is_double) acc.square();
    if (step.vertical_line) {
      acc.mul_line(sub_fp(xs, step.line_x));
    } else {
      acc.mul_line(sub_fp(ys, step.line_y) - sub_fp(xs, step.line_x).mul_fp(step.lambda));
    }
    if (step.result_x) acc.mul_vertical(sub_fp(xs, *step.result_x));
  }
  return acc.value();
}

// Mixed Jacobian + affine addition (madd-2007-bl), a = 0.
JacobianPoint<FpElement> jac_add_mixed(const JacobianPoint<FpElement>& p, const FpPoint& q) {
  FpElement z1z1 = p.Z().square();
  FpElement u2 = q.x() * z1z1;
  FpElement s2 = q.y() * p.Z() * z1z1;
  FpElement h = u2 - p.X();
  FpElement hh = h.square();
  FpElement i = hh + hh;
  i = i + i;
  FpElement j = h * i;
  FpElement r = s2 - p.Y();
  r = r + r;
  FpElement v = p.X() * i;
  FpElement x3 = r.square() - j - (v + v);
  FpElement yj = p.Y() * j;
  FpElement y3 = r * (v - x3) - (yj + yj);
  FpElement z3 = (p.Z() + h).square() - z1z1 - hh;
  return JacobianPoint<FpElement>(std::move(x3), std::move(y3), std::move(z3));
}

// Projective Miller loop: the running point stays Jacobian and every line is
// scaled by a power of Z, an F_p* factor the final exponentiation erases.
Fp2Element miller_jacobian(const FpPoint& p, const Fp2Point& s, const mpz_class& order) {
  const Fp2Element& xs = s.x();
  const Fp2Element& ys = s.y();
  const FpElement& xp = p.x();
  const FpElement& yp = p.y();
  Accumulator acc(xs.field());
  JacobianPoint<FpElement> t = JacobianPoint<FpElement>::from_affine(p);
  const std::size_t bits = mpz_sizeinbase(order.get_mpz_t(), 2);

  for (std::size_t i = bits - 1; i-- > 0;) {
    if (t.is_infinity())
      throw Error("Miller loop: base point order does not match the loop length");
    acc.square();
    if (t.Y().is_zero()) {
      // vertical tangent, scaled by Z^2: l = xs*Z^2 - X
      acc.mul_line(sub_fp(xs.mul_fp(t.Z().square()), t.X()));
      t = JacobianPoint<FpElement>::infinity();
    } else {
      FpElement zz = t.Z().square();
      FpElement zzz = zz * t.Z();
      FpElement xx = t.X().square();
      FpElement three_xx = xx + xx + xx;
      FpElement yy = t.Y().square();
      FpElement two_yy = yy + yy;
      // 2YZ^3 * ys - 3X^2Z^2 * xs + (3X^3 - 2Y^2): the tangent scaled by 2YZ^3
      FpElement coeff_y = (t.Y() + t.Y()) * zzz;
      FpElement coeff_x = three_xx * zz;
      FpElement coeff_1 = three_xx * t.X() - two_yy;
      Fp2Element line =
          ys.mul_fp(coeff_y) - xs.mul_fp(coeff_x) + Fp2Element::from_fp(coeff_1);
      acc.mul_line(line);
      t = jac_double(t);
      if (!t.is_infinity())
        acc.mul_vertical(sub_fp(xs.mul_fp(t.Z().square()), t.X()));
    }
    if (mpz_tstbit(order.get_mpz_t(), i)) {
      if (t.is_infinity())
        throw Error("Miller loop: base point order does not match the loop length");
      FpElement zz = t.Z().square();
      FpElement zzz = zz * t.Z();
      FpElement u2 = xp * zz;
      FpElement s2 = yp * zzz;
      if (t.X() == u2 && !(t.Y() == s2)) {
        // T = -P: vertical chord at P (exact affine coordinate, no scaling)
        acc.mul_line(sub_fp(xs, xp));
        t = JacobianPoint<FpElement>::infinity();
      } else if (t.X() == u2) {
        // T = P (unreachable for a prime-order base, kept for completeness):
        // reuse the tangent form
        FpElement xx = t.X().square();
        FpElement three_xx = xx + xx + xx;
        FpElement yy = t.Y().square();
        FpElement two_yy = yy + yy;
        FpElement coeff_y = (t.Y() + t.Y()) * zzz;
        FpElement coeff_x = three_xx * zz;
        FpElement coeff_1 = three_xx * t.X() - two_yy;
        acc.mul_line(ys.mul_fp(coeff_y) - xs.mul_fp(coeff_x) + Fp2Element::from_fp(coeff_1));
        t = jac_double(t);
        if (!t.is_infinity())
          acc.mul_vertical(sub_fp(xs.mul_fp(t.Z().square()), t.X()));
      } else {
        // chord through T and P, scaled by Z^3(x_T - x_P): with
        // D = Z(X - xp Z^2) and N = Y - yp Z^3, l = D(ys - yp) - N(xs - xp)
        FpElement d = t.Z() * (t.X() - u2);
        FpElement n = t.Y() - s2;
        Fp2Element line = sub_fp(ys, yp).mul_fp(d) - sub_fp(xs, xp).mul_fp(n);
        acc.mul_line(line);
        t = jac_add_mixed(t, p);
        if (!t.is_infinity())
          acc.mul_vertical(sub_fp(xs.mul_fp(t.Z().square()), t.X()));
      }
    }
  }
  if (!t.is_infinity())
    throw Error("Miller loop: base point does not have the stated order");
  return acc.value();
}

Fp2Point lift_to_fp2(const FpPoint& p) {
  if (p.is_infinity()) return Fp2Point::infinity();
  return Fp2Point(Fp2Element::from_fp(p.x()), Fp2Element::from_fp(p.y()));
}

// Deterministic stand-in for a random divisor representative: hash (P, Q,
// attempt) to two base-field points and combine one with the distortion of
// the other, which lands in the full E(F_p^2) group. The pairing value is
// independent of the choice, so determinism costs nothing.
Fp2Point retry_representative(const FpPoint& p, const FpPoint& q, const PairingContext& ctx,
                              std::uint32_t attempt) {
  Bytes index;
  append_u32_be(index, attempt);
  Bytes seed = sha256_concat({as_view(std::string_view("IBEPAIR-RETRY")),
                              as_view(serialize_point(p)), as_view(serialize_point(q)),
                              as_view(index)});
  const PrimeFieldPtr& field = ctx.field();
  const std::size_t w = field->byte_length() + 16;
  auto derive_point = [&](std::string_view tag) {
    Bytes stream = hash_stream(tag, seed, w);
    mpz_class v;
    mpz_import(v.get_mpz_t(), stream.size(), 1, 1, 1, 0, stream.data());
    FpElement y0 = field->element(v);
    FpElement x0 = (y0.square() - y0.one()).cube_root();
    return FpPoint(std::move(x0), std::move(y0));
  };
  FpPoint a = derive_point("RETRY-A");
  FpPoint b = derive_point("RETRY-B");
  return detail::add_unchecked(lift_to_fp2(a), distortion_map(b, ctx));
}

}  // namespace

PairingContext PairingContext::create(CurveParams params) {
  const mpz_class& p = params.field()->modulus();
  const mpz_class& q = params.order().value();
  Fp2Element zeta = find_order3_element(params.field());
  mpz_class group = p * p - 1;
  mpz_class tate_exponent = group / q;
  mpz_class unitary_exponent = (p + 1) / q;
  return PairingContext(std::move(params), std::move(zeta), std::move(tate_exponent),
                        std::move(unitary_exponent));
}

Fp2Point distortion_map(const FpPoint& p, const PairingContext& ctx) {
  if (p.is_infinity()) return Fp2Point::infinity();
  return Fp2Point(ctx.zeta().mul_fp(p.x()), Fp2Element::from_fp(p.y()));
}

Fp2Element miller_loop(const FpPoint& p, const Fp2Point& s, const mpz_class& order,
                       MillerVariant variant) {
  if (p.is_infinity() || s.is_infinity())
    throw Error("miller_loop rejects the point at infinity");
  detail::require_on_curve(p);
  detail::require_on_curve(s);
  if (variant == MillerVariant::Jacobian) return miller_jacobian(p, s, order);
  return evaluate_steps(build_steps(p, order), s);
}

GtElement final_exponentiation(const Fp2Element& f, const PairingContext& ctx) {
  if (f.is_zero()) throw DivisionByZeroError("final exponentiation of zero");
  // f^(p-1) = conj(f)/f because Frobenius negates i; then the (p+1)/q part.
  Fp2Element unitary = f.conjugate() * f.inv();
  return GtElement(unitary.pow(ctx.unitary_exponent()));
}

namespace {

template <typename MillerFn>
GtElement tate_with_retry(const FpPoint& p, const FpPoint& q, const PairingContext& ctx,
                          MillerFn&& miller) {
  if (p.is_infinity() || q.is_infinity()) return ctx.one();
  detail::require_on_curve(p);
  detail::require_on_curve(q);
  Fp2Point s = distortion_map(q, ctx);
  try {
    return final_exponentiation(miller(s), ctx);
  } catch (const ZeroEvaluationError&) {
  }
  // Evaluate at the equivalent divisor (S + R) - (R); the reduced value does
  // not depend on R. Only reachable when S collides with loop intermediates,
  // which needs tiny toy groups.
  for (std::uint32_t attempt = 0; attempt < 64; ++attempt) {
    Fp2Point r = retry_representative(p, q, ctx, attempt);
    if (r.is_infinity()) continue;
    Fp2Point shifted = detail::add_unchecked(s, r);
    if (shifted.is_infinity()) continue;
    try {
      Fp2Element f = miller(shifted) * miller(r).inv();
      return final_exponentiation(f, ctx);
    } catch (const ZeroEvaluationError&) {
      continue;
    }
  }
  throw ZeroEvaluationError("pairing retry budget exhausted");
}

}  // namespace

GtElement tate_pairing(const FpPoint& p, const FpPoint& q, const PairingContext& ctx,
                       MillerVariant variant) {
  return tate_with_retry(p, q, ctx, [&](const Fp2Point& s) {
    return miller_loop(p, s, ctx.group_order(), variant);
  });
}

PrecomputedPairing precompute(const FpPoint& p, const PairingContext& ctx) {
  if (p.is_infinity()) throw Error("cannot precompute the pairing for the point at infinity");
  detail::require_on_curve(p);
  return PrecomputedPairing(p, build_steps(p, ctx.group_order()));
}

GtElement apply_precomputed(const PrecomputedPairing& pre, const FpPoint& q,
                            const PairingContext& ctx) {
  return tate_with_retry(pre.base(), q, ctx,
                         [&](const Fp2Point& s) { return evaluate_steps(pre.steps(), s); });
}

}  // namespace ibepair
