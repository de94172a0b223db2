// Copyright 2026 The thetazero Authors.
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

#include "thetazero/gf.h"

#include <string>

#include "thetazero/errors.h"

namespace tz {
namespace {

using PolyFp = std::vector<int>;  // low degree first, over F_p

void TrimFp(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int InvModP(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

PolyFp ModFp(PolyFp a, const PolyFp& m, int p) {
  TrimFp(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = InvModP(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i)
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    TrimFp(a);
  }
  return a;
}

PolyFp FromDigits(int index, int p, int len) {
  PolyFp out(len);
  for (int i = 0; i < len; ++i, index /= p) out[i] = index % p;
  return out;
}

bool IrreducibleFp(const PolyFp& m, int p) {
  const int d = static_cast<int>(m.size()) - 1;
  for (int k = 1; 2 * k <= d; ++k) {
    int count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
      PolyFp div = FromDigits(idx, p, k);
      div.push_back(1);
      if (ModFp(m, div, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool IsPrime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::shared_ptr<const Field> Field::Make(int p, int f, int bound) {
  Require(p != 2, ErrorCode::kInvalidArgument,
          "characteristic 2 is not supported (odd p required)");
  Require(IsPrime(p), ErrorCode::kInvalidArgument,
          "p = " + std::to_string(p) + " is not prime");
  Require(f >= 1, ErrorCode::kInvalidArgument, "extension degree f must be >= 1");
  long long q = 1;
  for (int i = 0; i < f; ++i) {
    q *= p;
    Require(q <= bound, ErrorCode::kSizeBound,
            "q = p^f exceeds the field bound " + std::to_string(bound));
  }

  auto field = std::shared_ptr<Field>(new Field());
  Field& F = *field;
  F.p_ = p;
  F.f_ = f;
  F.q_ = static_cast<int>(q);

  // Smallest monic irreducible of degree f, ordered by digit index.
  for (int idx = 0;; ++idx) {
    PolyFp m = FromDigits(idx, p, f);
    m.push_back(1);
    if (IrreducibleFp(m, p)) {
      F.modulus_ = m;
      break;
    }
  }
  Require(IrreducibleFp(F.modulus_, p), ErrorCode::kInvariantViolated,
          "reducible F_q modulus");

  const int qi = F.q_;
  F.add_.resize(qi * qi);
  F.mul_.resize(qi * qi);
  F.neg_.resize(qi);
  F.inv_.assign(qi, 0);
  auto to_index = [p](const PolyFp& a) {
    int idx = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) idx = idx * p + a[i];
    return idx;
  };
  for (int x = 0; x < qi; ++x) {
    const PolyFp px = FromDigits(x, p, f);
    PolyFp nx(f);
    for (int i = 0; i < f; ++i) nx[i] = (p - px[i]) % p;
    F.neg_[x] = static_cast<std::uint16_t>(to_index(nx));
    for (int y = 0; y < qi; ++y) {
      const PolyFp py = FromDigits(y, p, f);
      PolyFp s(f);
      for (int i = 0; i < f; ++i) s[i] = (px[i] + py[i]) % p;
      F.add_[x * qi + y] = static_cast<std::uint16_t>(to_index(s));
      PolyFp prod(2 * f, 0);
      for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + px[i] * py[j]) % p;
      prod = ModFp(prod, F.modulus_, p);
      F.mul_[x * qi + y] = static_cast<std::uint16_t>(to_index(prod));
    }
  }
  for (int x = 1; x < qi; ++x)
    for (int y = 1; y < qi; ++y)
      if (F.mul_[x * qi + y] == 1) {
        F.inv_[x] = static_cast<std::uint16_t>(y);
        break;
      }
  F.trace_fp_.resize(qi);
  for (int x = 0; x < qi; ++x) {
    Fq acc = F.zero();
    Fq term = Fq{static_cast<std::uint16_t>(x)};
    for (int i = 0; i < f; ++i) {
      acc = F.add(acc, term);
      term = F.pow(term, static_cast<std::uint64_t>(p));
    }
    Require(acc.v < p, ErrorCode::kInvariantViolated, "trace left F_p");
    F.trace_fp_[x] = acc.v;
  }
  F.half_ = F.inv(F.from_int(2));
  for (int x = 1; x < qi; ++x) {
    if (!F.is_square(Fq{static_cast<std::uint16_t>(x)})) {
      F.nu_ = Fq{static_cast<std::uint16_t>(x)};
      break;
    }
  }
  // sigma must be the q-power Frobenius: alpha^q = -alpha.
  Require(F.pow(F.alpha(), static_cast<std::uint64_t>(qi)) == F.neg(F.alpha()),
          ErrorCode::kInvariantViolated, "F_{q^2} modulus is reducible");
  return field;
}

Fq Field::from_int(std::int64_t k) const {
  long long r = k % p_;
  if (r < 0) r += p_;
  return Fq{static_cast<std::uint16_t>(r)};
}

Fq Field::inv(Fq x) const {
  Require(x.v != 0, ErrorCode::kInvalidArgument, "inverse of zero in F_q");
  return Fq{inv_[x.v]};
}

Fq Field::pow(Fq x, std::uint64_t e) const {
  Fq r = one();
  for (; e > 0; e >>= 1, x = mul(x, x))
    if (e & 1) r = mul(r, x);
  return r;
}

bool Field::is_square(Fq x) const {
  if (x.v == 0) return true;
  return pow(x, static_cast<std::uint64_t>((q_ - 1) / 2)) == one();
}

Fq2 Field::mul(Fq2 x, Fq2 y) const {
  const Fq ac = mul(x.a, y.a);
  const Fq bd = mul(x.b, y.b);
  return {add(ac, mul(nu_, bd)), add(mul(x.a, y.b), mul(x.b, y.a))};
}

Fq2 Field::inv(Fq2 x) const {
  const Fq n = norm(x);
  Require(n.v != 0, ErrorCode::kInvalidArgument, "inverse of zero in F_{q^2}");
  const Fq ni = inv(n);
  const Fq2 c = sigma(x);
  return {mul(c.a, ni), mul(c.b, ni)};
}

Fq2 Field::pow(Fq2 x, std::uint64_t e) const {
  Fq2 r = one2();
  for (; e > 0; e >>= 1, x = mul(x, x))
    if (e & 1) r = mul(r, x);
  return r;
}

}  // namespace tz
