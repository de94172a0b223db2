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

#include "thetazero/charvalue.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "thetazero/errors.h"

namespace tz {
namespace {

std::int64_t AddChecked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::kOverflow, "CharValue coefficient overflow");
  return r;
}

std::int64_t MulChecked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::kOverflow, "CharValue coefficient overflow");
  return r;
}

int Mod(std::int64_t k, int p) {
  int r = static_cast<int>(k % p);
  return r < 0 ? r + p : r;
}

}  // namespace

CharValue::CharValue(int p, int q) : p_(p), q_(q), c_(2 * p, 0) {
  Require(p >= 3 && q >= p, ErrorCode::kInvalidArgument, "bad CharValue ring");
}

CharValue CharValue::Integer(int p, int q, std::int64_t n) {
  CharValue v(p, q);
  v.c_[0] = n;
  return v;
}

CharValue CharValue::Zeta(int p, int q, std::int64_t k) {
  CharValue v(p, q);
  v.c_[Mod(k, p)] = 1;
  v.Canonicalize();
  return v;
}

CharValue CharValue::SqrtQPow(int p, int q, int d) {
  Require(d >= 0, ErrorCode::kInvalidArgument, "negative power of sqrt q");
  CharValue v(p, q);
  std::int64_t m = 1;
  for (int i = 0; i < d / 2; ++i) m = MulChecked(m, q);
  v.c_[d % 2 == 0 ? 0 : p] = m;
  return v;
}

CharValue CharValue::FromZetaCounts(int p, int q,
                                    const std::vector<std::int64_t>& counts) {
  Require(static_cast<int>(counts.size()) == p, ErrorCode::kInvalidArgument,
          "zeta count vector has wrong length");
  CharValue v(p, q);
  for (int k = 0; k < p; ++k) v.c_[k] = counts[k];
  v.Canonicalize();
  return v;
}

void CharValue::Canonicalize() {
  for (int h = 0; h < 2; ++h) {
    std::int64_t* half = c_.data() + h * p_;
    const std::int64_t top = half[p_ - 1];
    if (top == 0) continue;
    for (int k = 0; k < p_; ++k) half[k] = AddChecked(half[k], -top);
  }
}

void CharValue::CheckCompat(const CharValue& o) const {
  Require(p_ == o.p_ && q_ == o.q_ && p_ != 0, ErrorCode::kInvalidArgument,
          "CharValue ring mismatch");
}

CharValue CharValue::operator+(const CharValue& o) const {
  CharValue r = *this;
  r += o;
  return r;
}

CharValue& CharValue::operator+=(const CharValue& o) {
  CheckCompat(o);
  for (int i = 0; i < 2 * p_; ++i) c_[i] = AddChecked(c_[i], o.c_[i]);
  Canonicalize();
  return *this;
}

CharValue CharValue::operator-() const {
  CharValue r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CharValue CharValue::operator-(const CharValue& o) const { return *this + (-o); }

CharValue CharValue::operator*(const CharValue& o) const {
  CheckCompat(o);
  CharValue r(p_, q_);
  for (int i = 0; i < 2 * p_; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < 2 * p_; ++j) {
      if (o.c_[j] == 0) continue;
      std::int64_t coef = MulChecked(c_[i], o.c_[j]);
      const bool si = i >= p_, sj = j >= p_;
      const int k = ((i % p_) + (j % p_)) % p_;
      if (si && sj) {
        r.c_[k] = AddChecked(r.c_[k], MulChecked(coef, q_));
      } else {
        const int slot = (si || sj) ? p_ + k : k;
        r.c_[slot] = AddChecked(r.c_[slot], coef);
      }
    }
  }
  r.Canonicalize();
  return r;
}

CharValue& CharValue::operator*=(const CharValue& o) {
  *this = *this * o;
  return *this;
}

CharValue CharValue::operator*(std::int64_t k) const {
  CharValue r = *this;
  for (auto& x : r.c_) x = MulChecked(x, k);
  return r;
}

bool CharValue::operator==(const CharValue& o) const {
  CheckCompat(o);
  return c_ == o.c_;
}

bool CharValue::IsZero() const {
  for (auto x : c_)
    if (x != 0) return false;
  return true;
}

bool CharValue::IsInteger(std::int64_t* out) const {
  for (int i = 1; i < 2 * p_; ++i)
    if (c_[i] != 0) return false;
  if (out) *out = c_[0];
  return true;
}

bool CharValue::DivExact(std::int64_t k, CharValue* out) const {
  Require(k != 0, ErrorCode::kInvalidArgument, "division by zero");
  CharValue r = *this;
  for (auto& x : r.c_) {
    if (x % k != 0) return false;
    x /= k;
  }
  *out = r;
  return true;
}

bool CharValue::DivSqrtQPow(int d, CharValue* out) const {
  CharValue num = *this;
  if (d % 2 == 1) num = num * SqrtQPow(p_, q_, 1);
  std::int64_t den = 1;
  for (int i = 0; i < (d + 1) / 2; ++i) den = MulChecked(den, q_);
  return num.DivExact(den, out);
}

CharValue CharValue::Galois(int k) const {
  Require(Mod(k, p_) != 0, ErrorCode::kInvalidArgument,
          "Galois exponent must be prime to p");
  CharValue r(p_, q_);
  for (int h = 0; h < 2; ++h)
    for (int i = 0; i < p_; ++i) {
      const int j = Mod(static_cast<std::int64_t>(i) * k, p_);
      r.c_[h * p_ + j] = c_[h * p_ + i];
    }
  r.Canonicalize();
  return r;
}

CharValue CharValue::ConjugateSqrt() const {
  CharValue r = *this;
  for (int i = p_; i < 2 * p_; ++i) r.c_[i] = -r.c_[i];
  return r;
}

CharValue CharValue::Pow(int e) const {
  Require(e >= 0, ErrorCode::kInvalidArgument, "negative exponent");
  CharValue r = Integer(p_, q_, 1), b = *this;
  for (; e > 0; e >>= 1, b = b * b)
    if (e & 1) r = r * b;
  return r;
}

std::vector<std::int64_t> CharValue::Coefficients() const {
  std::vector<std::int64_t> out;
  for (int h = 0; h < 2; ++h)
    for (int k = 0; k + 1 < p_; ++k) out.push_back(c_[h * p_ + k]);
  return out;
}

double CharValue::Real() const {
  double re = 0;
  const double s = std::sqrt(static_cast<double>(q_));
  for (int i = 0; i < 2 * p_; ++i)
    re += c_[i] * std::cos(2 * std::numbers::pi * (i % p_) / p_) *
          (i >= p_ ? s : 1.0);
  return re;
}

double CharValue::Imag() const {
  double im = 0;
  const double s = std::sqrt(static_cast<double>(q_));
  for (int i = 0; i < 2 * p_; ++i)
    im += c_[i] * std::sin(2 * std::numbers::pi * (i % p_) / p_) *
          (i >= p_ ? s : 1.0);
  return im;
}

std::string CharValue::ToString() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 2 * p_; ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    first = false;
    const std::int64_t a = c_[i] < 0 ? -c_[i] : c_[i];
    const int k = i % p_;
    const bool s = i >= p_;
    if (a != 1 || (k == 0 && !s)) os << a;
    if (k > 0) os << "z^" << k;
    if (s) os << (k > 0 || a != 1 ? "*" : "") << "sqrt(q)";
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace tz
