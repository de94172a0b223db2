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

#ifndef THETAZERO_CHARACTER_H_
#define THETAZERO_CHARACTER_H_

// The additive character psi_c(x) = zeta_p^{Tr_{F_q/F_p}(c x)} of F_q.

#include <cstdint>
#include <vector>

#include "thetazero/charvalue.h"
#include "thetazero/gf.h"

namespace tz {

class Character {
 public:
  // c must be nonzero; c = 1 is the default character.
  Character(FieldPtr field, Fq c);
  explicit Character(FieldPtr field) : Character(field, field->one()) {}

  const FieldPtr& field() const { return field_; }
  Fq scale() const { return c_; }
  // The exponent k in psi(x) = zeta^k.
  int Exponent(Fq x) const { return field_->trace_to_prime(field_->mul(c_, x)); }
  CharValue operator()(Fq x) const;
  CharValue Zero() const { return CharValue(field_->p(), field_->q()); }
  CharValue One() const { return CharValue::Integer(field_->p(), field_->q(), 1); }
  CharValue Int(std::int64_t n) const {
    return CharValue::Integer(field_->p(), field_->q(), n);
  }
  CharValue SqrtQPow(int d) const {
    return CharValue::SqrtQPow(field_->p(), field_->q(), d);
  }
  // Collapses a histogram of character exponents into a value.
  CharValue FromCounts(const std::vector<std::int64_t>& counts) const {
    return CharValue::FromZetaCounts(field_->p(), field_->q(), counts);
  }

 private:
  FieldPtr field_;
  Fq c_;
};

// Accumulates sum_i psi(x_i) as exponent counts.
class PsiSum {
 public:
  explicit PsiSum(const Character& psi) : psi_(psi), counts_(psi.field()->p(), 0) {}
  void Add(Fq x, std::int64_t weight = 1) { counts_[psi_.Exponent(x)] += weight; }
  CharValue Value() const { return psi_.FromCounts(counts_); }

 private:
  const Character& psi_;
  std::vector<std::int64_t> counts_;
};

}  // namespace tz

#endif  // THETAZERO_CHARACTER_H_
