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

#ifndef THETAZERO_LINALG_H_
#define THETAZERO_LINALG_H_

// Dense matrices and Gaussian elimination over an exact field.
//
// An Ops type supplies the field: a value type T and zero(), one(), add,
// sub, neg, mul, inv, is_zero.

#include <optional>
#include <utility>
#include <vector>

#include "thetazero/errors.h"
#include "thetazero/gf.h"

namespace tz {

template <class T>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c, const T& fill) : rows(r), cols(c), a(r * c, fill) {}
  T& operator()(int i, int j) { return a[i * cols + j]; }
  const T& operator()(int i, int j) const { return a[i * cols + j]; }
  friend bool operator==(const Mat&, const Mat&) = default;
};

struct FqOps {
  using T = Fq;
  const Field* f;
  T zero() const { return f->zero(); }
  T one() const { return f->one(); }
  T add(T x, T y) const { return f->add(x, y); }
  T sub(T x, T y) const { return f->sub(x, y); }
  T neg(T x) const { return f->neg(x); }
  T mul(T x, T y) const { return f->mul(x, y); }
  T inv(T x) const { return f->inv(x); }
  bool is_zero(T x) const { return x.v == 0; }
};

struct Fq2Ops {
  using T = Fq2;
  const Field* f;
  T zero() const { return f->zero2(); }
  T one() const { return f->one2(); }
  T add(T x, T y) const { return f->add(x, y); }
  T sub(T x, T y) const { return f->sub(x, y); }
  T neg(T x) const { return f->neg(x); }
  T mul(T x, T y) const { return f->mul(x, y); }
  T inv(T x) const { return f->inv(x); }
  bool is_zero(T x) const { return x.a.v == 0 && x.b.v == 0; }
};

template <class Ops>
Mat<typename Ops::T> Identity(const Ops& ops, int n) {
  Mat<typename Ops::T> m(n, n, ops.zero());
  for (int i = 0; i < n; ++i) m(i, i) = ops.one();
  return m;
}

template <class Ops>
Mat<typename Ops::T> MatMul(const Ops& ops, const Mat<typename Ops::T>& x,
                            const Mat<typename Ops::T>& y) {
  Require(x.cols == y.rows, ErrorCode::kInvalidArgument, "matmul shape");
  Mat<typename Ops::T> out(x.rows, y.cols, ops.zero());
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const auto& xik = x(i, k);
      if (ops.is_zero(xik)) continue;
      for (int j = 0; j < y.cols; ++j)
        out(i, j) = ops.add(out(i, j), ops.mul(xik, y(k, j)));
    }
  return out;
}

template <class Ops>
Mat<typename Ops::T> MatAdd(const Ops& ops, Mat<typename Ops::T> x,
                            const Mat<typename Ops::T>& y) {
  Require(x.rows == y.rows && x.cols == y.cols, ErrorCode::kInvalidArgument,
          "matadd shape");
  for (size_t i = 0; i < x.a.size(); ++i) x.a[i] = ops.add(x.a[i], y.a[i]);
  return x;
}

template <class T>
Mat<T> Transpose(const Mat<T>& m) {
  Mat<T> t(m.cols, m.rows, T{});
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

template <class Ops>
bool IsZeroMat(const Ops& ops, const Mat<typename Ops::T>& m) {
  for (const auto& x : m.a)
    if (!ops.is_zero(x)) return false;
  return true;
}

// In-place reduced row echelon form; returns the pivot columns.
template <class Ops>
std::vector<int> RowReduce(const Ops& ops, Mat<typename Ops::T>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (!ops.is_zero(m(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    const auto inv = ops.inv(m(row, col));
    for (int j = 0; j < m.cols; ++j) m(row, j) = ops.mul(m(row, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || ops.is_zero(m(i, col))) continue;
      const auto factor = m(i, col);
      for (int j = 0; j < m.cols; ++j)
        m(i, j) = ops.sub(m(i, j), ops.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Ops>
int Rank(const Ops& ops, Mat<typename Ops::T> m) {
  return static_cast<int>(RowReduce(ops, m).size());
}

// Basis of {x : m x = 0}, as the columns of the result.
template <class Ops>
Mat<typename Ops::T> Kernel(const Ops& ops, Mat<typename Ops::T> m) {
  const auto pivots = RowReduce(ops, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Mat<typename Ops::T> k(m.cols, static_cast<int>(free.size()), ops.zero());
  for (size_t f = 0; f < free.size(); ++f) {
    k(free[f], static_cast<int>(f)) = ops.one();
    for (size_t r = 0; r < pivots.size(); ++r)
      k(pivots[r], static_cast<int>(f)) = ops.neg(m(static_cast<int>(r), free[f]));
  }
  return k;
}

// Some x with m x = b (b may have several columns), if one exists.
template <class Ops>
std::optional<Mat<typename Ops::T>> Solve(const Ops& ops,
                                          const Mat<typename Ops::T>& m,
                                          const Mat<typename Ops::T>& b) {
  Require(m.rows == b.rows, ErrorCode::kInvalidArgument, "solve shape");
  Mat<typename Ops::T> aug(m.rows, m.cols + b.cols, ops.zero());
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    for (int j = 0; j < b.cols; ++j) aug(i, m.cols + j) = b(i, j);
  }
  const auto pivots = RowReduce(ops, aug);
  Mat<typename Ops::T> x(m.cols, b.cols, ops.zero());
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= m.cols) return std::nullopt;
    for (int j = 0; j < b.cols; ++j)
      x(pivots[r], j) = aug(static_cast<int>(r), m.cols + j);
  }
  return x;
}

template <class Ops>
std::optional<Mat<typename Ops::T>> Inverse(const Ops& ops,
                                            const Mat<typename Ops::T>& m) {
  Require(m.rows == m.cols, ErrorCode::kInvalidArgument, "inverse of non-square");
  if (Rank(ops, m) < m.rows) return std::nullopt;
  return Solve(ops, m, Identity(ops, m.rows));
}

template <class Ops>
typename Ops::T Det(const Ops& ops, Mat<typename Ops::T> m) {
  Require(m.rows == m.cols, ErrorCode::kInvalidArgument, "det of non-square");
  auto det = ops.one();
  for (int col = 0; col < m.cols; ++col) {
    int piv = -1;
    for (int i = col; i < m.rows; ++i)
      if (!ops.is_zero(m(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) return ops.zero();
    if (piv != col) {
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(col, j));
      det = ops.neg(det);
    }
    det = ops.mul(det, m(col, col));
    const auto inv = ops.inv(m(col, col));
    for (int i = col + 1; i < m.rows; ++i) {
      if (ops.is_zero(m(i, col))) continue;
      const auto factor = ops.mul(m(i, col), inv);
      for (int j = col; j < m.cols; ++j)
        m(i, j) = ops.sub(m(i, j), ops.mul(factor, m(col, j)));
    }
  }
  return det;
}

// The F_q-matrix of a linear map given on coordinate vectors.
template <class Fn>
Mat<Fq> MatrixOf(const Field& f, int dim_in, int dim_out, Fn&& fn) {
  Mat<Fq> m(dim_out, dim_in, f.zero());
  std::vector<Fq> e(dim_in, f.zero());
  for (int j = 0; j < dim_in; ++j) {
    e[j] = f.one();
    const std::vector<Fq> img = fn(e);
    Require(static_cast<int>(img.size()) == dim_out, ErrorCode::kInvalidArgument,
            "linear map image has wrong length");
    for (int i = 0; i < dim_out; ++i) m(i, j) = img[i];
    e[j] = f.zero();
  }
  return m;
}

inline std::vector<Fq> Apply(const Field& f, const Mat<Fq>& m, const std::vector<Fq>& v) {
  Require(static_cast<int>(v.size()) == m.cols, ErrorCode::kInvalidArgument,
          "apply: wrong length");
  std::vector<Fq> out(m.rows, f.zero());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (v[j].v) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  return out;
}

}  // namespace tz

#endif  // THETAZERO_LINALG_H_
