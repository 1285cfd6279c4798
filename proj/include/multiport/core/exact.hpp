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

// Exact arithmetic over Q(sqrt2, sqrt3) and its complexification.
//
// Every amplitude the default multiport produces lives in this field: beam
// splitter factors are 1/sqrt2 and i/sqrt2, the steady-state transition
// matrix has entries in Q[i], and bosonic normalisation for up to four
// photons needs sqrt(k) for k in {2, 3, 6}.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace multiport {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Real number a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational coefficients.
class Surd {
 public:
  Surd() = default;
  Surd(long long v) : c_{Rational(v), 0, 0, 0} {}  // NOLINT(implicit)
  Surd(Rational v) : c_{std::move(v), 0, 0, 0} {}  // NOLINT(implicit)
  Surd(Rational one, Rational sqrt2, Rational sqrt3, Rational sqrt6)
      : c_{std::move(one), std::move(sqrt2), std::move(sqrt3), std::move(sqrt6)} {}

  static Surd fraction(long long num, long long den) { return Surd(Rational(num, den)); }
  /// sqrt(k) for k whose square-free part is 1, 2, 3 or 6.
  static Surd sqrt_of(long long k);
  /// sqrt(q) for a non-negative rational whose square-free part divides 6.
  static Surd sqrt_of(const Rational& q);

  const Rational& one() const { return c_[0]; }
  const Rational& sqrt2() const { return c_[1]; }
  const Rational& sqrt3() const { return c_[2]; }
  const Rational& sqrt6() const { return c_[3]; }
  const std::array<Rational, 4>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Sign of the represented real number (-1, 0, +1).
  int sign() const;

  Surd inverse() const;
  double to_double() const;
  std::string str() const;

  Surd operator-() const;
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o) { return *this *= o.inverse(); }

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
  friend bool operator==(const Surd& a, const Surd& b) { return a.c_ == b.c_; }
  friend bool operator<(const Surd& a, const Surd& b) { return (a - b).sign() < 0; }

 private:
  std::array<Rational, 4> c_{};
};

/// Complex number with both parts in Q(sqrt2, sqrt3).
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long long v) : re_(v) {}  // NOLINT(implicit)
  ExactComplex(Surd re) : re_(std::move(re)) {}  // NOLINT(implicit)
  ExactComplex(Surd re, Surd im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactComplex i() { return {Surd(0), Surd(1)}; }

  const Surd& real() const { return re_; }
  const Surd& imag() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  ExactComplex conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Surd norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string str() const;

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Surd re_;
  Surd im_;
};

/// Dyadic view of a rational: numerator / 2^exponent. Empty when the
/// denominator is not a power of two.
struct Dyadic {
  BigInt numerator;
  unsigned exponent = 0;
};
std::optional<Dyadic> as_dyadic(const Rational& q);

/// Best rational approximation with denominator <= max_den (continued
/// fractions); empty when none lies within tol of x.
std::optional<Rational> rational_near(double x, double tol, long long max_den = 1 << 20);

/// Recovers an exact field element c*sqrt(k) (k in {1,2,3,6}, c rational with
/// small denominator) from a double. Throws ExactnessError when x has no such
/// form within tol.
Surd snap_to_surd(double x, double tol = 1e-12);
ExactComplex snap_to_exact(std::complex<double> z, double tol = 1e-12);

inline std::ostream& operator<<(std::ostream& os, const Surd& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << z.str(); }

}  // namespace multiport
