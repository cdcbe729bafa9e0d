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

#include "oracle.hpp"

#include <openssl/sha.h>

#include <stdexcept>

namespace toyoracle {

i64 addm(i64 a, i64 b, i64 p) { return ((a + b) % p + p) % p; }
i64 subm(i64 a, i64 b, i64 p) { return ((a - b) % p + p) % p; }
i64 mulm(i64 a, i64 b, i64 p) { return ((a % p) * (b % p) % p + p) % p; }

i64 powm(i64 a, i64 e, i64 p) {
  i64 r = 1 % p;
  a = ((a % p) + p) % p;
  while (e > 0) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

i64 invm(i64 a, i64 p) {
  if (a % p == 0) throw std::runtime_error("oracle: division by zero");
  return powm(a, p - 2, p);
}

i64 cbrtm(i64 a, i64 p) { return powm(a, (2 * p - 1) / 3, p); }

Fq2 add2(Fq2 x, Fq2 y, i64 p) { return {addm(x.a, y.a, p), addm(x.b, y.b, p)}; }
Fq2 sub2(Fq2 x, Fq2 y, i64 p) { return {subm(x.a, y.a, p), subm(x.b, y.b, p)}; }

Fq2 mul2(Fq2 x, Fq2 y, i64 p) {
  return {subm(mulm(x.a, y.a, p), mulm(x.b, y.b, p), p),
          addm(mulm(x.a, y.b, p), mulm(x.b, y.a, p), p)};
}

Fq2 inv2(Fq2 x, i64 p) {
  i64 n = invm(addm(mulm(x.a, x.a, p), mulm(x.b, x.b, p), p), p);
  return {mulm(x.a, n, p), mulm(subm(0, x.b, p), n, p)};
}

Fq2 pow2(Fq2 x, i64 e, i64 p) {
  Fq2 r{1, 0};
  while (e > 0) {
    if (e & 1) r = mul2(r, x, p);
    x = mul2(x, x, p);
    e >>= 1;
  }
  return r;
}

Fq2 find_zeta(i64 p) {
  i64 e = (p * p - 1) / 3;
  for (i64 k = 0;; ++k) {
    Fq2 z = pow2({k, 1}, e, p);
    if (!(z == Fq2{1, 0}) && !(z == Fq2{0, 0})) return z;
  }
}

Pt pt(i64 x, i64 y) { return {false, x, y}; }

Pt add_pts(Pt p1, Pt p2, i64 p) {
  if (p1.inf) return p2;
  if (p2.inf) return p1;
  i64 lam;
  if (p1.x == p2.x) {
    if (addm(p1.y, p2.y, p) == 0) return {};
    lam = mulm(mulm(3, mulm(p1.x, p1.x, p), p), invm(mulm(2, p1.y, p), p), p);
  } else {
    lam = mulm(subm(p2.y, p1.y, p), invm(subm(p2.x, p1.x, p), p), p);
  }
  i64 x3 = subm(subm(mulm(lam, lam, p), p1.x, p), p2.x, p);
  i64 y3 = subm(mulm(lam, subm(p1.x, x3, p), p), p1.y, p);
  return {false, x3, y3};
}

Pt mul_pt(i64 k, Pt q, i64 p) {
  Pt r{};
  while (k > 0) {
    if (k & 1) r = add_pts(r, q, p);
    q = add_pts(q, q, p);
    k >>= 1;
  }
  return r;
}

std::vector<Pt> enumerate_curve(i64 p) {
  std::vector<Pt> pts{Pt{}};
  for (i64 x = 0; x < p; ++x)
    for (i64 y = 0; y < p; ++y)
      if (mulm(y, y, p) == addm(mulm(x, mulm(x, x, p), p), 1, p)) pts.push_back(pt(x, y));
  return pts;
}

i64 order_of(Pt q, i64 p) {
  if (q.inf) return 1;
  i64 n = 1;
  Pt t = q;
  while (!t.inf) {
    t = add_pts(t, q, p);
    ++n;
  }
  return n;
}

Pt2 lift(Pt q, i64 p) {
  (void)p;
  if (q.inf) return {};
  return {false, {q.x, 0}, {q.y, 0}};
}

Pt2 distort(Pt q, Fq2 zeta, i64 p) {
  if (q.inf) return {};
  return {false, mul2(zeta, {q.x, 0}, p), {q.y, 0}};
}

Pt2 add_pts2(Pt2 p1, Pt2 p2, i64 p) {
  if (p1.inf) return p2;
  if (p2.inf) return p1;
  Fq2 lam;
  if (p1.x == p2.x) {
    if (add2(p1.y, p2.y, p) == Fq2{0, 0}) return {};
    lam = mul2(mul2({3, 0}, mul2(p1.x, p1.x, p), p), inv2(add2(p1.y, p1.y, p), p), p);
  } else {
    lam = mul2(sub2(p2.y, p1.y, p), inv2(sub2(p2.x, p1.x, p), p), p);
  }
  Fq2 x3 = sub2(sub2(mul2(lam, lam, p), p1.x, p), p2.x, p);
  Fq2 y3 = sub2(mul2(lam, sub2(p1.x, x3, p), p), p1.y, p);
  return {false, x3, y3};
}

std::vector<Pt2> enumerate_curve_fp2(i64 p) {
  std::vector<Pt2> pts{Pt2{}};
  for (i64 xa = 0; xa < p; ++xa)
    for (i64 xb = 0; xb < p; ++xb)
      for (i64 ya = 0; ya < p; ++ya)
        for (i64 yb = 0; yb < p; ++yb) {
          Fq2 x{xa, xb}, y{ya, yb};
          Fq2 lhs = mul2(y, y, p);
          Fq2 rhs = add2(mul2(x, mul2(x, x, p), p), {1, 0}, p);
          if (lhs == rhs) pts.push_back({false, x, y});
        }
  return pts;
}

std::optional<Fq2> miller(Pt base, Pt2 s, i64 q, i64 p) {
  if (base.inf || s.inf) throw std::runtime_error("oracle miller: infinity input");
  Fq2 num{1, 0}, den{1, 0};
  Pt t = base;
  int top = 62;
  while (top > 0 && ((q >> top) & 1) == 0) --top;
  for (int i = top - 1; i >= 0; --i) {
    // doubling
    num = mul2(num, num, p);
    den = mul2(den, den, p);
    if (t.inf) throw std::runtime_error("oracle miller: premature infinity");
    Fq2 l;
    if (t.y == 0) {
      l = sub2(s.x, {t.x, 0}, p);
      if (l == Fq2{0, 0}) return std::nullopt;
      num = mul2(num, l, p);
      t = Pt{};
    } else {
      i64 lam = mulm(mulm(3, mulm(t.x, t.x, p), p), invm(mulm(2, t.y, p), p), p);
      l = sub2(sub2(s.y, {t.y, 0}, p), mul2({lam, 0}, sub2(s.x, {t.x, 0}, p), p), p);
      if (l == Fq2{0, 0}) return std::nullopt;
      num = mul2(num, l, p);
      t = add_pts(t, t, p);
      if (!t.inf) {
        Fq2 v = sub2(s.x, {t.x, 0}, p);
        if (v == Fq2{0, 0}) return std::nullopt;
        den = mul2(den, v, p);
      }
    }
    if ((q >> i) & 1) {
      if (t.inf) throw std::runtime_error("oracle miller: premature infinity");
      Fq2 l2;
      if (t.x == base.x && addm(t.y, base.y, p) == 0) {
        l2 = sub2(s.x, {base.x, 0}, p);
        if (l2 == Fq2{0, 0}) return std::nullopt;
        num = mul2(num, l2, p);
        t = Pt{};
      } else {
        i64 lam = (t.x == base.x)
                      ? mulm(mulm(3, mulm(t.x, t.x, p), p), invm(mulm(2, t.y, p), p), p)
                      : mulm(subm(t.y, base.y, p), invm(subm(t.x, base.x, p), p), p);
        l2 = sub2(sub2(s.y, {t.y, 0}, p), mul2({lam, 0}, sub2(s.x, {t.x, 0}, p), p), p);
        if (l2 == Fq2{0, 0}) return std::nullopt;
        num = mul2(num, l2, p);
        t = add_pts(t, base, p);
        if (!t.inf) {
          Fq2 v = sub2(s.x, {t.x, 0}, p);
          if (v == Fq2{0, 0}) return std::nullopt;
          den = mul2(den, v, p);
        }
      }
    }
  }
  if (!t.inf) throw std::runtime_error("oracle miller: loop did not end at infinity");
  return mul2(num, inv2(den, p), p);
}

Fq2 tate(Pt base, Pt q_pt, i64 q, i64 p, Fq2 zeta) {
  if (base.inf || q_pt.inf) return {1, 0};
  Pt2 s = distort(q_pt, zeta, p);
  i64 e = (p * p - 1) / q;
  if (auto f = miller(base, s, q, p)) return pow2(*f, e, p);
  for (const Pt2& r : enumerate_curve_fp2(p)) {
    if (r.inf) continue;
    Pt2 shifted = add_pts2(s, r, p);
    if (shifted.inf) continue;
    auto f1 = miller(base, shifted, q, p);
    auto f0 = miller(base, r, q, p);
    if (!f1 || !f0) continue;
    return pow2(mul2(*f1, inv2(*f0, p), p), e, p);
  }
  throw std::runtime_error("oracle tate: no usable representative");
}

i64 gt_order(Fq2 g, i64 q, i64 p) {
  Fq2 t = g;
  for (i64 n = 1; n <= q + 1; ++n) {
    if (t == Fq2{1, 0}) return n;
    t = mul2(t, g, p);
  }
  throw std::runtime_error("oracle: order exceeds q");
}

namespace {

ibepair::Bytes sha256_oracle(const ibepair::Bytes& data) {
  ibepair::Bytes out(32);
  SHA256(data.data(), data.size(), out.data());
  return out;
}

std::size_t byte_len(i64 p) {
  std::size_t bits = 0;
  for (i64 v = p; v > 0; v >>= 1) ++bits;
  return (bits + 7) / 8;
}

}  // namespace

i64 hash_to_y(i64 p, std::uint8_t counter, const std::string& id) {
  const std::size_t want = byte_len(p) + 16;
  ibepair::Bytes stream;
  std::uint32_t block = 0;
  while (stream.size() < want) {
    ibepair::Bytes input;
    for (char c : std::string("BF-H2")) input.push_back(static_cast<std::uint8_t>(c));
    input.push_back(static_cast<std::uint8_t>(block >> 24));
    input.push_back(static_cast<std::uint8_t>(block >> 16));
    input.push_back(static_cast<std::uint8_t>(block >> 8));
    input.push_back(static_cast<std::uint8_t>(block));
    ++block;
    input.push_back(counter);
    for (char c : id) input.push_back(static_cast<std::uint8_t>(c));
    ibepair::Bytes digest = sha256_oracle(input);
    for (std::uint8_t b : digest) {
      if (stream.size() == want) break;
      stream.push_back(b);
    }
  }
  i64 v = 0;
  for (std::uint8_t b : stream) v = ((v << 8) | b) % p;
  return v;
}

ibepair::Bytes golden_toy_ciphertext(ibepair::ByteView m) {
  const i64 p = 11, q = 3, s = 2, r = 2;
  if (m.size() != 32) throw std::runtime_error("golden message must be 32 bytes");
  Pt gen = pt(0, 1);
  Pt pu_pkg = mul_pt(s, gen, p);  // (0, 10)
  Pt pu_id = pt(0, 1);
  Pt u = mul_pt(r, gen, p);
  Fq2 zeta = find_zeta(p);
  Fq2 g_id = tate(pu_id, pu_pkg, q, p, zeta);
  Fq2 g_r = pow2(g_id, r, p);
  // H1 mask: SHA-256("BF-H1" || a || b) with 1-byte field serialization
  ibepair::Bytes h1_input;
  for (char c : std::string("BF-H1")) h1_input.push_back(static_cast<std::uint8_t>(c));
  h1_input.push_back(static_cast<std::uint8_t>(g_r.a));
  h1_input.push_back(static_cast<std::uint8_t>(g_r.b));
  ibepair::Bytes mask = sha256_oracle(h1_input);
  ibepair::Bytes out;
  out.push_back(0x04);
  out.push_back(static_cast<std::uint8_t>(u.x));
  out.push_back(static_cast<std::uint8_t>(u.y));
  for (std::size_t i = 0; i < 32; ++i) out.push_back(m[i] ^ mask[i]);
  return out;
}

}  // namespace toyoracle
