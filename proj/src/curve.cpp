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

#include "ibepair/curve.hpp"

namespace ibepair {

CurveParams CurveParams::create(const mpz_class& p, GroupOrder q) {
  validate_system_prime(p, q.value());
  PrimeFieldPtr field = PrimeField::create(p);
  mpz_class cofactor = (p + 1) / q.value();
  return CurveParams(std::move(field), std::move(q), std::move(cofactor));
}

FpPoint CurveParams::map_to_point(const FpElement& y0) const {
  FpElement x0 = (y0.square() - y0.one()).cube_root();
  FpPoint candidate(std::move(x0), y0);
  FpPoint cleared = scalar_mul_fast(cofactor_, candidate);
  if (cleared.is_infinity())
    throw DegeneratePointError("cofactor clearing produced the point at infinity");
  return cleared;
}

FpPoint CurveParams::random_generator(EntropySource& rng) const {
  while (true) {
    FpElement y0 = field_->element(random_below(rng, field_->modulus()));
    FpElement x0 = (y0.square() - y0.one()).cube_root();
    FpPoint cleared = scalar_mul_fast(cofactor_, FpPoint(std::move(x0), std::move(y0)));
    // q is prime, so any non-identity result has exact order q.
    if (!cleared.is_infinity()) return cleared;
  }
}

namespace {

constexpr std::uint8_t kInfinityTag = 0x00;
constexpr std::uint8_t kUncompressedTag = 0x04;

template <typename F, typename ParseCoord>
Point<F> parse_point_impl(ByteView data, std::size_t coord_width, ParseCoord parse_coord) {
  if (data.empty()) throw ParseError("empty point encoding", 0);
  if (data[0] == kInfinityTag) {
    if (data.size() != 1) throw ParseError("trailing bytes after infinity tag", 1);
    return Point<F>::infinity();
  }
  if (data[0] != kUncompressedTag) throw ParseError("unknown point encoding tag", 0);
  if (data.size() != 1 + 2 * coord_width)
    throw ParseError("point encoding has wrong length", data.size());
  F x = parse_coord(data.subspan(1, coord_width));
  F y = parse_coord(data.subspan(1 + coord_width));
  Point<F> p(std::move(x), std::move(y));
  detail::require_on_curve(p);
  return p;
}

}  // namespace

Bytes serialize_point(const FpPoint& p) {
  if (p.is_infinity()) return Bytes{kInfinityTag};
  Bytes out{kUncompressedTag};
  append(out, p.x().to_bytes());
  append(out, p.y().to_bytes());
  return out;
}

Bytes serialize_point(const Fp2Point& p) {
  if (p.is_infinity()) return Bytes{kInfinityTag};
  Bytes out{kUncompressedTag};
  append(out, p.x().to_bytes());
  append(out, p.y().to_bytes());
  return out;
}

FpPoint parse_fp_point(ByteView data, const PrimeFieldPtr& field) {
  return parse_point_impl<FpElement>(
      data, field->byte_length(), [&](ByteView b) { return field->from_bytes(b); });
}

Fp2Point parse_fp2_point(ByteView data, const PrimeFieldPtr& field) {
  return parse_point_impl<Fp2Element>(
      data, 2 * field->byte_length(),
      [&](ByteView b) { return Fp2Element::from_bytes(field, b); });
}

}  // namespace ibepair
