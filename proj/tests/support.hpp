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

#ifndef FOXH_TESTS_SUPPORT_HPP_
#define FOXH_TESTS_SUPPORT_HPP_

#include <cmath>

#include "foxh/oracle.hpp"
#include "foxh/series.hpp"

namespace foxh::testing {

inline Ctx make_ctx(long digits) {
  Ctx ctx;
  ctx.digits = digits;
  return ctx;
}

inline Complex cplx(double re, double im, const Ctx& ctx) {
  return Complex(re, im, ctx.parse_bits());
}

inline Real real(double x, const Ctx& ctx) { return Real(x, ctx.parse_bits()); }

// alpha = beta = (1), a = b + k (integer k >= 1): H(t) = t^b (1-t)^{k-1}/(k-1)!.
inline HParams beta_family(double b, long k, const Ctx& ctx) {
  mpfr_prec_t bits = ctx.parse_bits();
  HParams p;
  Real br(b, bits);
  p.upper.emplace_back(Real(1, bits), Complex(br + k, Real::zero(bits)));
  p.lower.emplace_back(Real(1, bits), Complex(br, Real::zero(bits)));
  return p;
}

// alpha = (1), a = (2b+1), beta = (1/2, 1/2), b = (b, b+1/2):
// H(rho t) = 2^{1-2b} sqrt(pi) t^{2b}, rho = 1/2.
inline HParams duplication_family(double b, const Ctx& ctx) {
  mpfr_prec_t bits = ctx.parse_bits();
  HParams p;
  Real br(b, bits);
  Real half(0.5, bits);
  p.upper.emplace_back(Real(1, bits), Complex(2 * br + 1, Real::zero(bits)));
  p.lower.emplace_back(half, Complex(br, Real::zero(bits)));
  p.lower.emplace_back(half, Complex(br + half, Real::zero(bits)));
  return p;
}

inline double rel_err(const Complex& got, const Complex& want) {
  Real d = abs(got - want);
  Real w = abs(want);
  if (w.is_zero()) return d.to_double();
  return (d / w).to_double();
}

inline double rel_err(const Real& got, const Real& want) {
  return rel_err(Complex(got, Real::zero(got.prec())), Complex(want, Real::zero(want.prec())));
}

// ---------------------------------------------------------------------------
// Independent Gamma oracle: tanh-sinh quadrature of the Euler integral on a
// base strip Re in [1,2), extended by the recurrence Gamma(z+1) = z Gamma(z).
// Entirely disjoint from the Stirling-series implementation under test.
// ---------------------------------------------------------------------------

inline Complex gamma_ref_strip(const Complex& z0, long digits) {
  mpfr_prec_t bits = Ctx::bits_for(digits + 12);
  Real upper(static_cast<double>(digits + 30) * 2.302585092994046, bits);
  Real half_u = upper / 2;
  Real pi_half = Real::pi(bits) / 2;
  Complex zm1 = Complex(z0.re - 1, z0.im);

  auto integrand = [&](const Real& t) -> Complex {
    // t^{z-1} e^{-t}
    Complex v = exp(log(Complex(t, Real::zero(bits))) * zm1 - Complex(t, Real::zero(bits)));
    return v;
  };

  // tanh-sinh nodes x = (U/2)(1 + tanh((pi/2) sinh u)) on [0, U]; u_max and h
  // are dyadic so node positions convert exactly
  double u_max = 4.75;
  Complex prev = Complex::zero(bits);
  Complex integral = Complex::zero(bits);
  for (int level = 3; level <= 13; ++level) {
    double h = u_max / std::ldexp(1.0, level);
    Complex acc = Complex::zero(bits);
    long n_nodes = static_cast<long>(std::ldexp(1.0, level));
    for (long i = -n_nodes; i <= n_nodes; ++i) {
      Real u(static_cast<double>(i) * h, bits);
      Real su(bits), cu(bits);
      mpfr_sinh_cosh(su.raw(), cu.raw(), u.raw(), MPFR_RNDN);
      Real w = pi_half * su;
      Real tw(bits), cw(bits);
      mpfr_sinh_cosh(tw.raw(), cw.raw(), w.raw(), MPFR_RNDN);  // sinh(w), cosh(w)
      Real th = tw / cw;
      Real x = half_u * (1 + th);
      if (x.is_zero() || !(x < upper)) continue;
      Real weight = half_u * pi_half * cu / (cw * cw);
      acc += integrand(x) * weight;
    }
    acc *= Real(h, bits);
    integral = acc;
    if (level > 4) {
      Real diff = abs(integral - prev);
      Real tol = pow(Real(10, bits), -(digits + 6)) * (abs(integral) + Real(1, bits));
      if (diff <= tol) break;
    }
    prev = integral;
  }
  return integral;
}

inline Complex gamma_ref(const Complex& z, long digits) {
  mpfr_prec_t bits = Ctx::bits_for(digits + 12);
  Complex zz(bits);
  mpfr_set(zz.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(zz.im.raw(), z.im.raw(), MPFR_RNDN);
  long m = static_cast<long>(std::floor(zz.re.to_double())) - 1;
  Complex z0 = zz - Real(m, bits);  // Re in [1, 2)
  Complex g = gamma_ref_strip(z0, digits);
  if (m > 0) {
    Complex prod = Complex::one(bits);
    for (long k = 0; k < m; ++k) prod *= (z0 + k);
    return g * prod;
  }
  if (m < 0) {
    Complex prod = Complex::one(bits);
    for (long k = 0; k < -m; ++k) prod *= (zz + k);
    return g / prod;
  }
  return g;
}

}  // namespace foxh::testing

#endif  // FOXH_TESTS_SUPPORT_HPP_
