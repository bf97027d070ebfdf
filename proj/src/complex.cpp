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

#include "foxh/complex.hpp"

namespace foxh {

Complex exp(const Complex& z) {
  mpfr_prec_t p = z.prec();
  Real m = exp(z.re);
  if (z.im.is_zero()) return Complex(m, Real::zero(p));
  Real c(p), s(p);
  mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
  return Complex(m * c, m * s);
}

Complex log(const Complex& z) {
  if (z.im.is_zero() && z.re.sign() > 0) return Complex(log(z.re), Real::zero(z.prec()));
  Real m = abs(z);
  return Complex(log(m), arg(z));
}

Complex pow(const Complex& z, const Complex& w) {
  if (w.is_zero()) return Complex::one(z.prec() > w.prec() ? z.prec() : w.prec());
  return exp(w * log(z));
}

Complex pow(const Complex& z, const Real& x) {
  if (z.im.is_zero() && z.re.sign() > 0) return Complex(pow(z.re, x), Real::zero(z.prec()));
  return exp(log(z) * x);
}

Complex pow_int(const Complex& z, long n) {
  mpfr_prec_t p = z.prec();
  if (n == 0) return Complex::one(p);
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1ul : static_cast<unsigned long>(n);
  Complex base = z;
  Complex acc = Complex::one(p);
  while (k > 0) {
    if (k & 1ul) acc *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  if (n < 0) return Complex::one(p) / acc;
  return acc;
}

}  // namespace foxh
