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

#ifndef THETAZERO_GF_H_
#define THETAZERO_GF_H_

// Exact arithmetic in F_q and F_{q^2} = F_q[alpha]/(alpha^2 - nu).
//
// F_q is built as F_p[beta]/(mu(beta)) with mu monic irreducible of degree f.
// An F_q element is stored as the integer whose base-p digits are its
// coefficients in the power basis 1, beta, ..., beta^{f-1}. F_{q^2} is the
// quadratic extension by a square root alpha of the smallest non-square nu of
// F_q, so that the cover involution sigma(a + b alpha) = a - b alpha is the
// q-power Frobenius.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace tz {

inline constexpr int kDefaultFieldBound = 121;

struct Fq {
  std::uint16_t v = 0;
  friend bool operator==(Fq, Fq) = default;
  friend auto operator<=>(Fq, Fq) = default;
};

// a + b * alpha.
struct Fq2 {
  Fq a;
  Fq b;
  friend bool operator==(Fq2, Fq2) = default;
  friend auto operator<=>(Fq2, Fq2) = default;
};

class Field {
 public:
  // Builds F_q and F_{q^2} for q = p^f. Rejects p = 2, composite p, and
  // q above `bound`.
  static std::shared_ptr<const Field> Make(int p, int f,
                                           int bound = kDefaultFieldBound);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }
  // Coefficients of mu over F_p, low degree first, monic of degree f.
  const std::vector<int>& modulus() const { return modulus_; }
  // alpha^2 = nu.
  Fq nu() const { return nu_; }

  // F_q.
  Fq zero() const { return Fq{0}; }
  Fq one() const { return Fq{1}; }
  Fq from_int(std::int64_t k) const;
  Fq element(int index) const { return Fq{static_cast<std::uint16_t>(index)}; }
  Fq add(Fq x, Fq y) const { return Fq{add_[x.v * q_ + y.v]}; }
  Fq sub(Fq x, Fq y) const { return Fq{add_[x.v * q_ + neg_[y.v]]}; }
  Fq neg(Fq x) const { return Fq{neg_[x.v]}; }
  Fq mul(Fq x, Fq y) const { return Fq{mul_[x.v * q_ + y.v]}; }
  Fq inv(Fq x) const;
  Fq div(Fq x, Fq y) const { return mul(x, inv(y)); }
  Fq pow(Fq x, std::uint64_t e) const;
  bool is_square(Fq x) const;
  // Absolute trace F_q -> F_p, returned as an integer in [0, p).
  int trace_to_prime(Fq x) const { return trace_fp_[x.v]; }
  // The inverse of 2, which exists because p is odd.
  Fq half() const { return half_; }

  // F_{q^2}.
  Fq2 zero2() const { return Fq2{}; }
  Fq2 one2() const { return Fq2{one(), zero()}; }
  Fq2 alpha() const { return Fq2{zero(), one()}; }
  Fq2 embed(Fq x) const { return Fq2{x, zero()}; }
  Fq2 element2(int index) const {
    return Fq2{element(index % q_), element(index / q_)};
  }
  int index2(Fq2 x) const { return x.a.v + q_ * x.b.v; }
  bool in_base(Fq2 x) const { return x.b.v == 0; }
  Fq2 add(Fq2 x, Fq2 y) const { return {add(x.a, y.a), add(x.b, y.b)}; }
  Fq2 sub(Fq2 x, Fq2 y) const { return {sub(x.a, y.a), sub(x.b, y.b)}; }
  Fq2 neg(Fq2 x) const { return {neg(x.a), neg(x.b)}; }
  Fq2 mul(Fq2 x, Fq2 y) const;
  Fq2 inv(Fq2 x) const;
  Fq2 div(Fq2 x, Fq2 y) const { return mul(x, inv(y)); }
  Fq2 pow(Fq2 x, std::uint64_t e) const;
  Fq2 sigma(Fq2 x) const { return {x.a, neg(x.b)}; }
  Fq trace(Fq2 x) const { return add(x.a, x.a); }
  Fq norm(Fq2 x) const { return sub(mul(x.a, x.a), mul(nu_, mul(x.b, x.b))); }

 private:
  Field() = default;

  int p_ = 0;
  int f_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  Fq nu_;
  Fq half_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
  std::vector<int> trace_fp_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool IsPrime(int n);

}  // namespace tz

#endif  // THETAZERO_GF_H_
