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
#include "multiport/core/exact.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "multiport/core/errors.hpp"

namespace multiport {
namespace {

int sign_of(const Rational& q) { return q.sign(); }

// Sign of p + q*sqrt2.
int sign_sqrt2(const Rational& p, const Rational& q) {
  const int sp = sign_of(p);
  const int sq = sign_of(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: compare p^2 with 2 q^2.
  const int cmp = Rational(p * p).compare(Rational(2 * q * q));
  return cmp == 0 ? 0 : (cmp > 0 ? sp : sq);
}

// Element of Q(sqrt2) as a pair, used while reducing by sqrt3.
struct Q2 {
  Rational p;
  Rational q;
};
Q2 mul(const Q2& x, const Q2& y) { return {x.p * y.p + 2 * x.q * y.q, x.p * y.q + x.q * y.p}; }
Q2 sub(const Q2& x, const Q2& y) { return {x.p - y.p, x.q - y.q}; }
int sign(const Q2& x) { return sign_sqrt2(x.p, x.q); }

bool perfect_square(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) os << "/" << boost::multiprecision::denominator(q);
  return os.str();
}

}  // namespace

Surd Surd::sqrt_of(long long k) { return sqrt_of(Rational(k)); }

Surd Surd::sqrt_of(const Rational& q) {
  if (q.sign() < 0) throw ExactnessError("square root of a negative number");
  if (q.sign() == 0) return Surd();
  static constexpr int kRadicands[] = {1, 2, 3, 6};
  for (int k : kRadicands) {
    // sqrt(q) = sqrt(q / k) * sqrt(k) when q / k is a rational square.
    const Rational r = q / k;
    BigInt nr;
    BigInt dr;
    if (perfect_square(boost::multiprecision::numerator(r), nr) &&
        perfect_square(boost::multiprecision::denominator(r), dr)) {
      Surd out;
      out.c_[k == 1 ? 0 : k == 2 ? 1 : k == 3 ? 2 : 3] = Rational(nr, dr);
      return out;
    }
  }
  throw ExactnessError("sqrt(" + rational_str(q) + ") is outside Q(sqrt2, sqrt3)");
}

bool Surd::is_zero() const {
  return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

bool Surd::is_rational() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

int Surd::sign() const {
  // x = P + Q*sqrt3 with P = a + b sqrt2, Q = c + d sqrt2.
  const Q2 p{c_[0], c_[1]};
  const Q2 q{c_[2], c_[3]};
  const int sp = multiport::sign(p);
  const int sq = multiport::sign(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const Q2 q3{3 * q.p, 3 * q.q};
  const int cmp = multiport::sign(sub(mul(p, p), mul(q3, q)));
  return cmp == 0 ? 0 : (cmp > 0 ? sp : sq);
}

Surd Surd::inverse() const {
  if (is_zero()) throw ExactnessError("division by exact zero");
  // Multiply by the sqrt3-conjugate to land in Q(sqrt2), then by the
  // sqrt2-conjugate to land in Q.
  const Surd conj3(c_[0], c_[1], -c_[2], -c_[3]);
  const Surd r = *this * conj3;  // r = e + f sqrt2
  const Rational& e = r.c_[0];
  const Rational& f = r.c_[1];
  const Rational den = e * e - 2 * f * f;
  const Surd conj2(e / den, -f / den, 0, 0);
  return conj3 * conj2;
}

double Surd::to_double() const {
  using boost::multiprecision::cpp_bin_float_quad;
  // Quad precision keeps cancellation between the four terms harmless.
  auto to_quad = [](const Rational& q) {
    return cpp_bin_float_quad(boost::multiprecision::numerator(q)) /
           cpp_bin_float_quad(boost::multiprecision::denominator(q));
  };
  cpp_bin_float_quad acc = to_quad(c_[0]);
  acc += to_quad(c_[1]) * boost::multiprecision::sqrt(cpp_bin_float_quad(2));
  acc += to_quad(c_[2]) * boost::multiprecision::sqrt(cpp_bin_float_quad(3));
  acc += to_quad(c_[3]) * boost::multiprecision::sqrt(cpp_bin_float_quad(6));
  return acc.convert_to<double>();
}

std::string Surd::str() const {
  static const char* kRoots[] = {"", "sqrt2", "sqrt3", "sqrt6"};
  std::string out;
  for (int k = 0; k < 4; ++k) {
    if (c_[k].is_zero()) continue;
    std::string term;
    if (k == 0) {
      term = rational_str(c_[k]);
    } else if (c_[k] == 1) {
      term = kRoots[k];
    } else if (c_[k] == -1) {
      term = std::string("-") + kRoots[k];
    } else {
      term = rational_str(c_[k]) + "*" + kRoots[k];
    }
    if (!out.empty()) out += term.front() == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out.empty() ? "0" : out;
}

Surd Surd::operator-() const { return Surd(-c_[0], -c_[1], -c_[2], -c_[3]); }

Surd& Surd::operator+=(const Surd& o) {
  for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  const auto& [a1, b1, c1, d1] = c_;
  const auto& [a2, b2, c2, d2] = o.c_;
  // sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2.
  std::array<Rational, 4> r{
      a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
      a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
      a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
      a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
  };
  c_ = std::move(r);
  return *this;
}

std::string ExactComplex::str() const {
  auto wrap = [](const Surd& s) {
    std::string t = s.str();
    const bool compound = t.find(" + ") != std::string::npos || t.find(" - ") != std::string::npos;
    return compound ? "(" + t + ")" : t;
  };
  if (im_.is_zero()) return re_.str();
  std::string im = im_ == Surd(1) ? "" : im_ == Surd(-1) ? "-" : wrap(im_) + "*";
  if (re_.is_zero()) return im + "i";
  std::string out = re_.str();
  if (im.empty()) return out + " + i";
  if (im.front() == '-') return out + " - " + im.substr(1) + "i";
  return out + " + " + im + "i";
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  Surd re = re_ * o.re_ - im_ * o.im_;
  Surd im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  const Surd inv = o.norm().inverse();
  *this *= o.conj();
  re_ *= inv;
  im_ *= inv;
  return *this;
}

std::optional<Dyadic> as_dyadic(const Rational& q) {
  BigInt den = boost::multiprecision::denominator(q);
  unsigned exponent = 0;
  while (den > 1) {
    if (boost::multiprecision::bit_test(den, 0)) return std::nullopt;
    den >>= 1;
    ++exponent;
  }
  return Dyadic{boost::multiprecision::numerator(q), exponent};
}

std::optional<Rational> rational_near(double x, double tol, long long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) return Rational(h, k);
    if (frac < 1e-300) break;
    const double inv = 1.0 / frac;
    const long long a = static_cast<long long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

Surd snap_to_surd(double x, double tol) {
  static constexpr int kRadicands[] = {1, 2, 3, 6};
  const double scale = std::max(1.0, std::abs(x));
  for (int idx = 0; idx < 4; ++idx) {
    const double root = std::sqrt(static_cast<double>(kRadicands[idx]));
    if (auto q = rational_near(x / root, tol * scale / root, 1 << 16)) {
      std::array<Rational, 4> c{};
      c[idx] = *q;
      return Surd(c[0], c[1], c[2], c[3]);
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << x;
  throw ExactnessError("value " + os.str() + " has no exact form c*sqrt(k), k in {1,2,3,6}");
}

ExactComplex snap_to_exact(std::complex<double> z, double tol) {
  return {snap_to_surd(z.real(), tol), snap_to_surd(z.imag(), tol)};
}

}  // namespace multiport
