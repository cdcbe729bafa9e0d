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

#include <vector>

#include "ibepair/curve.hpp"
#include "ibepair/fp2.hpp"

namespace ibepair {

// Tate pairing e: G1 x G1 -> G2 on the type-1 curve, with G1 the order-q
// subgroup of E(F_p) and G2 the order-q subgroup of F_p^2*. Symmetry comes
// from the distortion map phi(x, y) = (zeta*x, y).

// An element of G2, i.e. an Fp2 value satisfying value^q = 1 after final
// exponentiation.
class GtElement {
 public:
  explicit GtElement(Fp2Element value) : v_(std::move(value)) {}

  const Fp2Element& value() const { return v_; }
  bool is_one() const { return v_.is_one(); }

  GtElement operator*(const GtElement& o) const { return GtElement(v_ * o.v_); }
  GtElement pow(const mpz_class& e) const { return GtElement(v_.pow(e)); }
  GtElement inv() const { return GtElement(v_.inv()); }

  bool operator==(const GtElement& o) const { return v_ == o.v_; }
  bool operator!=(const GtElement& o) const { return !(*this == o); }

  Bytes to_bytes() const { return v_.to_bytes(); }

 private:
  Fp2Element v_;
};

// Immutable per-parameter-set pairing state; shareable across threads.
class PairingContext {
 public:
  static PairingContext create(CurveParams params);

  const CurveParams& params() const { return params_; }
  const PrimeFieldPtr& field() const { return params_.field(); }
  const mpz_class& group_order() const { return params_.order().value(); }
  // The distortion constant: a primitive cube root of unity in F_p^2.
  const Fp2Element& zeta() const { return zeta_; }
  // (p^2 - 1) / q.
  const mpz_class& tate_exponent() const { return tate_exponent_; }
  // (p + 1) / q, the odd half of the final exponentiation.
  const mpz_class& unitary_exponent() const { return unitary_exponent_; }

  GtElement one() const { return GtElement(fp2_one(params_.field())); }

 private:
  PairingContext(CurveParams params, Fp2Element zeta, mpz_class tate_exponent,
                 mpz_class unitary_exponent)
      : params_(std::move(params)),
        zeta_(std::move(zeta)),
        tate_exponent_(std::move(tate_exponent)),
        unitary_exponent_(std::move(unitary_exponent)) {}

  CurveParams params_;
  Fp2Element zeta_;
  mpz_class tate_exponent_;
  mpz_class unitary_exponent_;
};

// phi(x, y) = (zeta*x, y); phi(O) = O. Maps E(F_p) off the base field (for
// x != 0) while preserving the curve equation, since (zeta*x)^3 = x^3.
Fp2Point distortion_map(const FpPoint& p, const PairingContext& ctx);

// One Miller-loop update: the line through the current point (tangent or
// chord to the base point) and the vertical at the step's result. Step data
// depends only on the base point, which is what makes precomputation work.
struct MillerStep {
  bool is_double = true;       // squaring step vs addition step
  bool vertical_line = false;  // line is x = line_x (y_T = 0 or T = -P)
  FpElement line_x;            // anchor x (and lambda/anchor y when sloped)
  FpElement line_y;
  FpElement lambda;
  std::optional<FpElement> result_x;  // x of the step's output; absent when O
};

// The loop's sequence of lines for base point p (order q), plus bookkeeping
// for replaying them against any evaluation point.
class PrecomputedPairing {
 public:
  PrecomputedPairing(FpPoint base, std::vector<MillerStep> steps)
      : base_(std::move(base)), steps_(std::move(steps)) {}

  const FpPoint& base() const { return base_; }
  const std::vector<MillerStep>& steps() const { return steps_; }

 private:
  FpPoint base_;
  std::vector<MillerStep> steps_;
};

enum class MillerVariant {
  Affine,    // affine point updates (one field inversion per step)
  Jacobian,  // projective updates, inversion-free lines
};

// Raw (pre-exponentiation) Miller value f_{q,P}(S) for P in E(F_p) of order
// q and S in E(F_p^2), with denominators kept. Throws ZeroEvaluationError if
// a line or vertical vanishes at S (S collides with a loop intermediate);
// callers retry with an equivalent divisor representative. Rejects O inputs.
Fp2Element miller_loop(const FpPoint& p, const Fp2Point& s, const mpz_class& order,
                       MillerVariant variant = MillerVariant::Affine);

// f^((p^2-1)/q), computed as (conj(f)/f)^((p+1)/q) since f^(p-1) = conj(f)/f
// in F_p[i]. Kills every F_p* factor, so all Miller variants and divisor
// representatives land on the same canonical G2 element. Throws on f = 0.
GtElement final_exponentiation(const Fp2Element& f, const PairingContext& ctx);

// The reduced Tate pairing e(P, Q) = final_exp(miller(P, phi(Q))), with
// e(O, .) = e(., O) = 1. Zero evaluations (reachable on toy curves) are
// retried internally against deterministically derived equivalent
// representatives (Q + R) - (R) before surfacing.
GtElement tate_pairing(const FpPoint& p, const FpPoint& q, const PairingContext& ctx,
                       MillerVariant variant = MillerVariant::Jacobian);

// Fixed-argument optimization: capture the loop's lines for P once, replay
// them per evaluation point. apply_precomputed(precompute(P), Q) equals
// tate_pairing(P, Q) bit-for-bit.
PrecomputedPairing precompute(const FpPoint& p, const PairingContext& ctx);
GtElement apply_precomputed(const PrecomputedPairing& pre, const FpPoint& q,
                            const PairingContext& ctx);

}  // namespace ibepair
