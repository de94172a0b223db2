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

#ifndef THETAZERO_CHARVALUE_H_
#define THETAZERO_CHARVALUE_H_

// Exact values in Z[zeta_p][s]/(s^2 - q).
//
// A value is stored as 2p integers: c[k] is the coefficient of zeta^k and
// c[p + k] the coefficient of zeta^k * s. The representation is kept
// canonical by using 1 + zeta + ... + zeta^{p-1} = 0 to clear the zeta^{p-1}
// slot in each half, so equality is coefficient-wise.

#include <cstdint>
#include <string>
#include <vector>

namespace tz {

class CharValue {
 public:
  CharValue() = default;
  // The zero of the ring for characteristic p and q = p^f.
  CharValue(int p, int q);

  static CharValue Integer(int p, int q, std::int64_t n);
  // zeta_p^k.
  static CharValue Zeta(int p, int q, std::int64_t k);
  // s^d, the d-th power of the formal square root of q (d >= 0).
  static CharValue SqrtQPow(int p, int q, int d);
  // sum_k counts[k] * zeta^k, counts of length p.
  static CharValue FromZetaCounts(int p, int q,
                                  const std::vector<std::int64_t>& counts);

  int p() const { return p_; }
  int q() const { return q_; }

  CharValue operator+(const CharValue& o) const;
  CharValue operator-(const CharValue& o) const;
  CharValue operator-() const;
  CharValue operator*(const CharValue& o) const;
  CharValue operator*(std::int64_t k) const;
  CharValue& operator+=(const CharValue& o);
  CharValue& operator*=(const CharValue& o);
  bool operator==(const CharValue& o) const;
  bool operator!=(const CharValue& o) const { return !(*this == o); }

  bool IsZero() const;
  // Integer value if the element lies in Z.
  bool IsInteger(std::int64_t* out = nullptr) const;
  // Exact division by a nonzero integer; false if not divisible.
  bool DivExact(std::int64_t k, CharValue* out) const;
  // Exact division by s^d; false if the quotient leaves the ring.
  bool DivSqrtQPow(int d, CharValue* out) const;
  // The automorphism zeta -> zeta^k, s -> s, for k prime to p.
  CharValue Galois(int k) const;
  // The automorphism s -> -s.
  CharValue ConjugateSqrt() const;
  CharValue Pow(int e) const;

  // 2(p-1) canonical coefficients: zeta^0..zeta^{p-2}, then the s-half.
  std::vector<std::int64_t> Coefficients() const;
  // Approximate complex value with s = +sqrt(q), for display only.
  double Real() const;
  double Imag() const;
  std::string ToString() const;

 private:
  void Canonicalize();
  void CheckCompat(const CharValue& o) const;

  int p_ = 0;
  int q_ = 0;
  std::vector<std::int64_t> c_;
};

}  // namespace tz

#endif  // THETAZERO_CHARVALUE_H_
