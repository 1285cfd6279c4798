// Copyright 2026 The Multiport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "multiport/core/errors.hpp"
#include "multiport/core/scalar.hpp"

namespace multiport {

/// Small dense square matrix, row-major. Port-space operators are at most a
/// few dozen wide, so no blocking or expression templates.
template <Amplitude T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim, ScalarOps<T>::zero()) {}
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : SquareMatrix(static_cast<int>(rows.size())) {
    int r = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != dim_) throw DimensionError("matrix literal is not square");
      int c = 0;
      for (const auto& v : row) (*this)(r, c++) = v;
      ++r;
    }
  }

  static SquareMatrix identity(int dim) {
    SquareMatrix m(dim);
    for (int k = 0; k < dim; ++k) m(k, k) = ScalarOps<T>::one();
    return m;
  }

  int dim() const { return dim_; }
  T& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * dim_ + c]; }

  SquareMatrix adjoint() const {
    SquareMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out(c, r) = ScalarOps<T>::conj((*this)(r, c));
    return out;
  }

  SquareMatrix transpose() const {
    SquareMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  SquareMatrix& operator*=(const T& s) {
    for (auto& v : data_) v = v * s;
    return *this;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionError("matrix product of mismatched sizes");
    SquareMatrix out(a.dim_);
    for (int r = 0; r < a.dim_; ++r)
      for (int k = 0; k < a.dim_; ++k) {
        const T& ark = a(r, k);
        if (ScalarOps<T>::is_zero(ark)) continue;
        for (int c = 0; c < a.dim_; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }
  friend SquareMatrix operator*(SquareMatrix a, const T& s) { return a *= s; }
  friend SquareMatrix operator*(const T& s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionError("matrix sum of mismatched sizes");
    for (size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionError("matrix difference of mismatched sizes");
    for (size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (static_cast<int>(v.size()) != dim_) throw DimensionError("vector length does not match matrix");
    std::vector<T> out(dim_, ScalarOps<T>::zero());
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  SquareMatrix<Complex> to_complex() const {
    SquareMatrix<Complex> out(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out(r, c) = ScalarOps<T>::to_complex((*this)(r, c));
    return out;
  }

 private:
  int dim_ = 0;
  std::vector<T> data_;
};

using UnitaryMatrix = SquareMatrix<Complex>;
using ExactMatrix = SquareMatrix<ExactComplex>;

/// max_{r,c} |a(r,c) - b(r,c)|.
inline double max_abs_diff(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("comparing matrices of different sizes");
  double worst = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

/// max entry of |M M^dagger - I|.
inline double unitarity_defect(const UnitaryMatrix& m) {
  return max_abs_diff(m * m.adjoint(), UnitaryMatrix::identity(m.dim()));
}

inline bool is_unitary(const UnitaryMatrix& m, double tol = kFloatTolerance) {
  return unitarity_defect(m) < tol;
}

}  // namespace multiport
