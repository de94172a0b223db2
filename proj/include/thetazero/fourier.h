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

#ifndef THETAZERO_FOURIER_H_
#define THETAZERO_FOURIER_H_

// The finite Fourier transform FT(phi)(w) = (-1)^r sum_v phi(v) psi(<v, w>)
// on V = F_q^r, and its fiberwise version over a finite base.
//
// Functions are dense tables indexed by sum_i v_i q^i (coordinate 0 least
// significant, v_i the element index). The dual of F_q^r is F_q^r with the
// dot product.

#include <cstdint>
#include <string>
#include <vector>

#include "thetazero/character.h"
#include "thetazero/linalg.h"
#include "thetazero/quadspace.h"

namespace tz {

class FiniteVS {
 public:
  FiniteVS(FieldPtr field, int r, double bound = 1e6);
  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int dim() const { return r_; }
  std::size_t size() const { return size_; }
  std::vector<Fq> Point(std::size_t idx) const;
  std::size_t Index(const std::vector<Fq>& v) const;
  std::size_t Negate(std::size_t idx) const;
  Fq Pairing(const std::vector<Fq>& v, const std::vector<Fq>& w) const;

 private:
  FieldPtr field_;
  int r_;
  std::size_t size_;
};

using FiniteFn = std::vector<CharValue>;

FiniteFn ConstantFn(const Character& psi, const FiniteVS& V, std::int64_t c);
FiniteFn DeltaFn(const Character& psi, const FiniteVS& V);
// v -> psi(q(v)).
FiniteFn QuadraticCharacterFn(const Character& psi, const QuadSpace& Q);
// Integer-valued functions.
FiniteFn FromCounts(const Character& psi, const std::vector<std::int64_t>& c);

// The transform, computed one coordinate at a time.
FiniteFn Ft(const Character& psi, const FiniteVS& V, const FiniteFn& phi);
// [-1]^* phi.
FiniteFn NegatePull(const FiniteVS& V, const FiniteFn& phi);
// f: V' -> V given as a dim V x dim V' matrix.
FiniteFn PushForward(const FiniteVS& src, const FiniteVS& tgt, const Mat<Fq>& f,
                     const FiniteFn& phi);
FiniteFn PullBack(const FiniteVS& src, const FiniteVS& tgt, const Mat<Fq>& f,
                  const FiniteFn& phi);
CharValue SumProduct(const Character& psi, const FiniteFn& a, const FiniteFn& b);
FiniteFn Scale(const FiniteFn& phi, const CharValue& c);

// The identities; each returns true iff both sides agree exactly.
bool CheckInvolutivity(const Character& psi, const FiniteVS& V,
                       const FiniteFn& phi);
bool CheckPlancherel(const Character& psi, const FiniteVS& V,
                     const FiniteFn& phi1, const FiniteFn& phi2);
// FT(q^* psi) = (-1)^r G(V, q) (-q^/4)^* psi with q^(w) = w^T A^-1 w.
bool CheckGaussian(const Character& psi, const QuadSpace& Q);
// FT(f_! phi') = (-1)^{r - r'} f^^* FT(phi').
bool CheckPush(const Character& psi, const FiniteVS& src, const FiniteVS& tgt,
               const Mat<Fq>& f, const FiniteFn& phi_src);
// FT(f^* phi) = (-1)^{r' - r} q^{r' - r} f^_! FT(phi).
bool CheckPull(const Character& psi, const FiniteVS& src, const FiniteVS& tgt,
               const Mat<Fq>& f, const FiniteFn& phi_tgt);

// A vector space over a finite base T: fiber dimensions d_t.
struct RelVS {
  FieldPtr field;
  std::vector<int> dims;
  FiniteVS Fiber(int t) const { return FiniteVS(field, dims[t]); }
  int base_size() const { return static_cast<int>(dims.size()); }
};
using RelFn = std::vector<FiniteFn>;
// Fiberwise linear map Y' -> Y over T.
using RelMap = std::vector<Mat<Fq>>;

// (-1)^d pr_1!(pr_0^* alpha . ev^* psi), summed pointwise over Y x_T Y^.
RelFn ArithFt(const Character& psi, const RelVS& Y, const RelFn& alpha);
// pi_!: the fiber sums, a function on T.
std::vector<CharValue> PiPush(const Character& psi, const RelFn& alpha);
RelFn RelPush(const RelVS& src, const RelVS& tgt, const RelMap& f,
              const RelFn& alpha);
RelFn RelPull(const RelVS& src, const RelVS& tgt, const RelMap& f,
              const RelFn& alpha);
RelMap RelTranspose(const RelMap& f);
// Base change along h: T' -> T. Y' = h^*Y.
RelVS BasePullSpace(const RelVS& Y, const std::vector<int>& h);
RelFn BasePush(const Character& psi, const RelVS& Y, const std::vector<int>& h,
               const RelFn& alpha_prime);
RelFn BasePull(const RelVS& Y, const std::vector<int>& h, const RelFn& alpha);

bool CheckArithInvolutivity(const Character& psi, const RelVS& Y,
                            const RelFn& alpha);
bool CheckArithPlancherel(const Character& psi, const RelVS& Y,
                          const RelFn& alpha1, const RelFn& beta2);
bool CheckArithPush(const Character& psi, const RelVS& src, const RelVS& tgt,
                    const RelMap& f, const RelFn& alpha);
bool CheckArithPull(const Character& psi, const RelVS& src, const RelVS& tgt,
                    const RelMap& f, const RelFn& alpha);
bool CheckBaseChangePush(const Character& psi, const RelVS& Y,
                         const std::vector<int>& h, const RelFn& alpha_prime);
bool CheckBaseChangePull(const Character& psi, const RelVS& Y,
                         const std::vector<int>& h, const RelFn& alpha);

struct SelfTestLine {
  std::string identity;
  int trials = 0;
  int passed = 0;
};
// Runs every identity above on random data for dims <= r_max.
std::vector<SelfTestLine> FourierSelfTest(const Character& psi, int r_max,
                                          int trials, std::uint64_t seed);

}  // namespace tz

#endif  // THETAZERO_FOURIER_H_
