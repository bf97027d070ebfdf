/*
 * Copyright 2026 The foxh Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FOXH_COMPLEX_HPP_
#define FOXH_COMPLEX_HPP_

#include <string>
#include <utility>

#include "foxh/real.hpp"

namespace foxh {

// Complex value on two Reals. Powers and logarithms use the principal
// branch throughout.
struct Complex {
  Real re, im;

  Complex() = default;
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.prec()) {}
  Complex(long n, mpfr_prec_t prec) : re(n, prec), im(prec) {}
  Complex(double x, double y, mpfr_prec_t prec) : re(x, prec), im(y, prec) {}

  static Complex zero(mpfr_prec_t prec) { return Complex(prec); }
  static Complex one(mpfr_prec_t prec) { return Complex(1, prec); }
  static Complex i_unit(mpfr_prec_t prec) {
    Complex c(prec);
    c.im += 1;
    return c;
  }

  mpfr_prec_t prec() const { return re.prec() >= im.prec() ? re.prec() : im.prec(); }
  bool is_real() const { return im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex conj() const { return Complex(re, -im); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    *this = *this * o;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
  }
  Complex& operator+=(const Real& x) {
    re += x;
    return *this;
  }
  Complex& operator-=(const Real& x) {
    re -= x;
    return *this;
  }
  Complex& operator*=(const Real& x) {
    re *= x;
    im *= x;
    return *this;
  }
  Complex& operator/=(const Real& x) {
    re /= x;
    im /= x;
    return *this;
  }
  Complex& operator*=(long n) {
    re *= n;
    im *= n;
    return *this;
  }
  Complex& operator/=(long n) {
    re /= n;
    im /= n;
    return *this;
  }

  Complex operator-() const { return Complex(-re, -im); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    Real r = a.re * b.re;
    fms_acc(r, a.im, b.im);
    Real i = a.re * b.im;
    fma_acc(i, a.im, b.re);
    return Complex(std::move(r), std::move(i));
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re;
    fma_acc(d, b.im, b.im);
    Real r = a.re * b.re;
    fma_acc(r, a.im, b.im);
    Real i = a.im * b.re;
    fms_acc(i, a.re, b.im);
    return Complex(r / d, i / d);
  }
  friend Complex operator+(const Complex& a, const Real& x) { return Complex(a.re + x, a.im); }
  friend Complex operator-(const Complex& a, const Real& x) { return Complex(a.re - x, a.im); }
  friend Complex operator*(const Complex& a, const Real& x) { return Complex(a.re * x, a.im * x); }
  friend Complex operator/(const Complex& a, const Real& x) { return Complex(a.re / x, a.im / x); }
  friend Complex operator*(const Real& x, const Complex& a) { return a * x; }
  friend Complex operator+(const Real& x, const Complex& a) { return a + x; }
  friend Complex operator-(const Real& x, const Complex& a) { return Complex(x - a.re, -a.im); }
  friend Complex operator*(const Complex& a, long n) { return Complex(a.re * n, a.im * n); }
  friend Complex operator*(long n, const Complex& a) { return a * n; }
  friend Complex operator/(const Complex& a, long n) { return Complex(a.re / n, a.im / n); }
  friend Complex operator+(const Complex& a, long n) { return Complex(a.re + n, a.im); }
  friend Complex operator-(const Complex& a, long n) { return Complex(a.re - n, a.im); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline Real abs2(const Complex& a) {
  Real r = a.re * a.re;
  fma_acc(r, a.im, a.im);
  return r;
}

inline Real abs(const Complex& a) { return hypot(a.re, a.im); }

inline Real arg(const Complex& a) { return atan2(a.im, a.re); }

// acc += a * b without forming a temporary Complex.
inline void cfma(Complex& acc, const Complex& a, const Complex& b) {
  fma_acc(acc.re, a.re, b.re);
  fms_acc(acc.re, a.im, b.im);
  fma_acc(acc.im, a.re, b.im);
  fma_acc(acc.im, a.im, b.re);
}

Complex exp(const Complex& z);
// Principal logarithm; z must not be 0.
Complex log(const Complex& z);
// Principal branch of z^w = exp(w log z).
Complex pow(const Complex& z, const Complex& w);
Complex pow(const Complex& z, const Real& x);
// Integer power by repeated squaring (valid everywhere, no branch issues).
Complex pow_int(const Complex& z, long n);

inline Complex lift(const Real& x) { return Complex(x); }

}  // namespace foxh

#endif  // FOXH_COMPLEX_HPP_
