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

#ifndef THETAZERO_POLYALG_H_
#define THETAZERO_POLYALG_H_

// Polynomials and rational functions over F_{q^2}, Smith normal form over
// R = F_{q^2}[t], and finite torsion R-modules presented as cokernels.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thetazero/gf.h"
#include "thetazero/linalg.h"

namespace tz {

inline constexpr double kDefaultEnumerationBound = 1e6;

// Low degree first; no trailing zero coefficients.
struct Poly {
  std::vector<Fq2> c;
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  friend bool operator==(const Poly&, const Poly&) = default;
};

class PolyRing {
 public:
  using T = Poly;
  explicit PolyRing(FieldPtr field) : field_(std::move(field)) {}

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }

  Poly zero() const { return Poly{}; }
  Poly one() const { return constant(field_->one2()); }
  Poly constant(Fq2 x) const;
  Poly monomial(Fq2 x, int k) const;
  Poly t() const { return monomial(field_->one2(), 1); }
  Poly from_coeffs(std::vector<Fq2> c) const;

  bool is_zero(const Poly& x) const { return x.is_zero(); }
  bool is_unit(const Poly& x) const { return x.deg() == 0; }
  Fq2 coeff(const Poly& x, int k) const;
  Fq2 lead(const Poly& x) const;

  Poly add(const Poly& x, const Poly& y) const;
  Poly sub(const Poly& x, const Poly& y) const;
  Poly neg(const Poly& x) const;
  Poly mul(const Poly& x, const Poly& y) const;
  Poly scale(const Poly& x, Fq2 c) const;
  Poly shift(const Poly& x, int k) const;  // x * t^k, k >= 0
  // x = quo * y + rem with deg rem < deg y.
  void divmod(const Poly& x, const Poly& y, Poly* quo, Poly* rem) const;
  Poly div(const Poly& x, const Poly& y) const;
  Poly mod(const Poly& x, const Poly& y) const;
  bool divides(const Poly& d, const Poly& x) const;
  Poly monic(const Poly& x) const;
  Poly gcd(Poly x, Poly y) const;  // monic, gcd(0,0) = 0
  Poly pow(const Poly& x, int e) const;
  Fq2 eval(const Poly& x, Fq2 at) const;
  // Coefficient-wise sigma.
  Poly sigma(const Poly& x) const;
  // u^d x(1/u) for d >= deg x.
  Poly reverse(const Poly& x, int d) const;
  Poly random(std::mt19937_64& rng, int max_deg) const;
  std::string to_string(const Poly& x) const;

 private:
  FieldPtr field_;
};

using PolyMat = Mat<Poly>;

PolyMat PolyMatSigma(const PolyRing& R, const PolyMat& m);
// Determinant by cofactor expansion.
Poly PolyDet(const PolyRing& R, const PolyMat& m);
PolyMat PolyIdentity(const PolyRing& R, int n);

// Rational functions num/den with den monic and gcd(num, den) = 1.
struct RatFunc {
  Poly num;
  Poly den;
  friend bool operator==(const RatFunc&, const RatFunc&) = default;
};

class RatOps {
 public:
  using T = RatFunc;
  explicit RatOps(const PolyRing& R) : R_(&R) {}
  const PolyRing& ring() const { return *R_; }
  T make(const Poly& num, const Poly& den) const;
  T from_poly(const Poly& p) const { return T{p, R_->one()}; }
  T zero() const { return T{Poly{}, R_->one()}; }
  T one() const { return from_poly(R_->one()); }
  T add(const T& x, const T& y) const;
  T sub(const T& x, const T& y) const;
  T neg(const T& x) const { return T{R_->neg(x.num), x.den}; }
  T mul(const T& x, const T& y) const;
  T inv(const T& x) const;
  bool is_zero(const T& x) const { return x.num.is_zero(); }
  T sigma(const T& x) const { return make(R_->sigma(x.num), R_->sigma(x.den)); }
  // Representative in [0, 1) of x modulo R: the proper part of num/den.
  T frac(const T& x) const;
  // Coefficient of t^k (k < 0) in the expansion of x at infinity.
  Fq2 coeff_at_infinity(const T& x, int k) const;

 private:
  const PolyRing* R_;
};

enum class PivotStrategy { kMinDegree, kFirstNonzero };

// U * M * W = D with U, W unimodular and D diagonal, d_i | d_{i+1}, each
// nonzero d_i monic.
struct SmithForm {
  PolyMat U, Uinv, W, Winv, D;
  std::vector<Poly> diagonal() const;
};

SmithForm SmithNormalForm(const PolyRing& R, const PolyMat& M,
                          PivotStrategy strategy = PivotStrategy::kMinDegree);

// A closed point of Spec R: a monic irreducible pi.
struct PrimaryFactor {
  Poly pi;
  int exponent = 0;
};

// Monic irreducible factorization by trial division, increasing degree.
std::vector<PrimaryFactor> Factor(const PolyRing& R, const Poly& f,
                                  double bound = 2e6);

// The finite R-module R^k / M R^k for a square nonsingular M, presented in
// Smith coordinates: x maps to (U x)_i mod d_i.
class TorsionModule {
 public:
  TorsionModule(const PolyRing& R, const PolyMat& M,
                PivotStrategy strategy = PivotStrategy::kMinDegree);

  using Element = std::vector<Poly>;

  const PolyRing& ring() const { return *R_; }
  const PolyMat& presentation() const { return M_; }
  int rank() const { return k_; }
  const std::vector<Poly>& invariant_factors() const { return d_; }
  // Nonunit invariant factors split into prime powers.
  std::vector<PrimaryFactor> primary_factors() const;
  int dim2() const { return dim2_; }  // over F_{q^2}
  int dimq() const { return 2 * dim2_; }  // over F_q
  double cardinality() const;

  Element Reduce(const std::vector<Poly>& x) const;
  std::vector<Poly> Lift(const Element& e) const;
  Element Zero() const { return Element(k_); }
  Element Add(const Element& x, const Element& y) const;
  Element Sub(const Element& x, const Element& y) const;
  Element Scale(const Element& x, const Poly& c) const;
  bool IsZero(const Element& x) const;

  // F_q coordinates: for each Smith slot i and 0 <= j < deg d_i the two F_q
  // components of the t^j coefficient.
  std::vector<Fq> Coords(const Element& e) const;
  Element FromCoords(const std::vector<Fq>& v) const;
  // Calls fn on every element; throws SizeBoundError above `bound`.
  void Enumerate(const std::function<void(const Element&)>& fn,
                 double bound = kDefaultEnumerationBound) const;

 private:
  const PolyRing* R_;
  PolyMat M_;
  int k_;
  PolyMat U_, Uinv_;
  std::vector<Poly> d_;
  int dim2_ = 0;
};

// The dual R^k / M^T R^k of R^k / M R^k with the perfect pairing
// <x, y> = y^T M^{-1} x in K'/R.
class TorsionDuality {
 public:
  TorsionDuality(const PolyRing& R, const PolyMat& M);
  const TorsionModule& module() const { return q_; }
  const TorsionModule& dual() const { return qd_; }
  RatFunc Pair(const TorsionModule::Element& x,
               const TorsionModule::Element& y) const;

 private:
  const PolyRing* R_;
  TorsionModule q_;
  TorsionModule qd_;
  Mat<RatFunc> minv_;
};

Mat<RatFunc> ToRat(const RatOps& K, const PolyMat& m);

}  // namespace tz

#endif  // THETAZERO_POLYALG_H_
