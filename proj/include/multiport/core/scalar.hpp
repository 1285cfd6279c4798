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

// Numeric policy. Every algorithm in the library is written once against
// ScalarOps<T> and instantiated for two amplitude types:
//   Complex       floating mode, double precision, pruning below 1e-14;
//   ExactComplex  exact mode over Q(sqrt2, sqrt3)[i], used by conformance tests.

#include <cmath>
#include <complex>
#include <concepts>

#include "multiport/core/errors.hpp"
#include "multiport/core/exact.hpp"

namespace multiport {

using Complex = std::complex<double>;

inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kFloatTolerance = 1e-12;

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Complex> {
  using Real = double;
  static constexpr bool kExact = false;

  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static Complex integer(long long v) { return {static_cast<double>(v), 0.0}; }
  static Complex fraction(long long num, long long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static Complex sqrt_of(long long k) { return {std::sqrt(static_cast<double>(k)), 0.0}; }
  static Complex from_complex(Complex z) { return z; }
  static Complex from_real(double r) { return {r, 0.0}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static double norm(const Complex& z) { return std::norm(z); }
  static Complex to_complex(const Complex& z) { return z; }
  static double to_double(double r) { return r; }
  static Complex from_real_part(double r) { return {r, 0.0}; }
  static double real_sqrt(double r) { return std::sqrt(r); }
  static bool negligible(const Complex& z) { return std::abs(z) < kPruneThreshold; }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  /// Magnitude used for pivot selection.
  static double pivot_weight(const Complex& z) { return std::abs(z); }
};

template <>
struct ScalarOps<ExactComplex> {
  using Real = Surd;
  static constexpr bool kExact = true;

  static ExactComplex zero() { return {}; }
  static ExactComplex one() { return {1}; }
  static ExactComplex i() { return ExactComplex::i(); }
  static ExactComplex integer(long long v) { return {v}; }
  static ExactComplex fraction(long long num, long long den) { return {Surd::fraction(num, den)}; }
  static ExactComplex sqrt_of(long long k) { return {Surd::sqrt_of(k)}; }
  static ExactComplex from_complex(Complex z) { return snap_to_exact(z); }
  static ExactComplex from_real(double r) { return {snap_to_surd(r)}; }
  static ExactComplex conj(const ExactComplex& z) { return z.conj(); }
  static Surd norm(const ExactComplex& z) { return z.norm(); }
  static Complex to_complex(const ExactComplex& z) { return z.to_complex(); }
  static double to_double(const Surd& r) { return r.to_double(); }
  static ExactComplex from_real_part(const Surd& r) { return {r}; }
  /// Exact only for rationals whose square-free part divides 6.
  static Surd real_sqrt(const Surd& r) {
    if (!r.is_rational()) throw ExactnessError("square root of an irrational surd");
    return Surd::sqrt_of(r.one());
  }
  static bool negligible(const ExactComplex& z) { return z.is_zero(); }
  static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
  static double pivot_weight(const ExactComplex& z) { return z.is_zero() ? 0.0 : 1.0; }
};

template <class T>
concept Amplitude = requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { ScalarOps<T>::norm(a) };
  { ScalarOps<T>::to_complex(a) } -> std::convertible_to<Complex>;
};

template <class T>
using RealOf = typename ScalarOps<T>::Real;

}  // namespace multiport
