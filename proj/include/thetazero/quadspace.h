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

#ifndef THETAZERO_QUADSPACE_H_
#define THETAZERO_QUADSPACE_H_

// Quadratic spaces over F_q, their Gauss sums, and the quadratic spaces
// (V, q12), (V, q21) on V = Hom(F^*, sigma^*Q).

#include <functional>
#include <vector>

#include "thetazero/character.h"
#include "thetazero/charvalue.h"
#include "thetazero/hermitian.h"
#include "thetazero/linalg.h"

namespace tz {

// q(v) = v^T A v with A symmetric; <v, w> = v^T A w is the bilinear form
// with q(v + w) - q(v) - q(w) = 2 <v, w>.
class QuadSpace {
 public:
  QuadSpace(FieldPtr field, Mat<Fq> gram);
  // Polarizes q on the standard basis and checks q(v) = v^T A v on every
  // vector when q^r <= check_bound, otherwise on sums of basis pairs.
  static QuadSpace FromFunction(
      FieldPtr field, int r,
      const std::function<Fq(const std::vector<Fq>&)>& q,
      double check_bound = 1e5);

  const FieldPtr& field() const { return field_; }
  int dim() const { return gram_.rows; }
  const Mat<Fq>& gram() const { return gram_; }
  Fq Eval(const std::vector<Fq>& v) const;
  Fq Bilinear(const std::vector<Fq>& v, const std::vector<Fq>& w) const;
  bool Nondegenerate() const;
  QuadSpace Scaled(Fq c) const;
  // The form v^T A^-1 v on the dual.
  QuadSpace Dual() const;

 private:
  FieldPtr field_;
  Mat<Fq> gram_;
};

QuadSpace OrthogonalSum(const QuadSpace& a, const QuadSpace& b);
// xy on F_q^2.
QuadSpace HyperbolicPlane(FieldPtr f);
// The norm form of F_{q^2} on coordinates (a, b) of a + b alpha.
QuadSpace NormForm(FieldPtr f);
QuadSpace DiagonalForm(FieldPtr f, const std::vector<Fq>& d);
// v -> sigma(v)^T S v on F_{q^2}^k, S a constant Hermitian matrix, written
// on F_q coordinates (a_1, b_1, ..., a_k, b_k).
QuadSpace HermitianForm(FieldPtr f, const Mat<Fq2>& s);
// v -> Tr(v^T S v) on F_q coordinates, S symmetric over F_{q^2}.
QuadSpace TraceForm(FieldPtr f, const Mat<Fq2>& s);

// gamma = G / sqrt(q)^dim need not lie in Z[zeta_p][sqrt q] (for q = 3 and
// odd dim it is +-i), so it is stored only when it does; comparisons of
// gamma values go through G.
struct GaussData {
  CharValue G;  // sum_v psi(q(v))
  int dim = 0;  // the normalization exponent of sqrt(q)
  bool has_gamma = false;
  CharValue gamma;
  // gamma == v, tested as G == v sqrt(q)^dim.
  bool GammaIs(const CharValue& v) const;
};

GaussData GaussSum(const Character& psi, const QuadSpace& V,
                   double bound = 1e6);
// The Gauss sum over k' = F_{q^2} of v -> v^T S v with the character
// psi(Tr(.)), normalized by sqrt(q^2)^k.
GaussData GaussSumOverExtension(const Character& psi, const Mat<Fq2>& s,
                                double bound = 1e6);

// The unit gamma as +-1, or 0 if it is not +-1.
int GammaSign(const GaussData& g);

// eta(D) = (-1)^{deg_X D}; chi(det E) = (-1)^{n deg E} with deg over F_{q^2}.
inline int Eta(int deg_x) { return deg_x % 2 ? -1 : 1; }
inline int Chi(int deg2, int n) { return (n * deg2) % 2 ? -1 : 1; }

// V = Hom(F^*, sigma^*Q): n elements of sigma^*Q, one per summand of F^*.
class HomToTorsion {
 public:
  using Point = std::vector<TorsionModule::Element>;
  HomToTorsion(const QData& q, int n) : q_(&q), n_(n) {}
  int n() const { return n_; }
  int dimq() const { return n_ * q_->SigmaQ().dimq(); }
  std::vector<Fq> Coords(const Point& s) const;
  Point FromCoords(const std::vector<Fq>& v) const;

 private:
  const QData* q_;
  int n_;
};

enum class Side { k12, k21 };

// q12(s) = trace of F (x) omega^-1 -> sigma^*F^* -> Q -> sigma^*Q^* -> F[1]:
// the residue of sum_ij h_ji c12(w_j, w_i) with w_j = sigma(s_j) in Q.
Fq InducedForm(const HermBundle& F, const QData& q, Side side,
               const HomToTorsion::Point& s);
QuadSpace InducedQuadraticSpace(const HermBundle& F, const QData& q, Side side);

}  // namespace tz

#endif  // THETAZERO_QUADSPACE_H_
