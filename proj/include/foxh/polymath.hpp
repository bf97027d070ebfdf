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

#ifndef FOXH_POLYMATH_HPP_
#define FOXH_POLYMATH_HPP_

#include <memory>
#include <vector>

#include "foxh/complex.hpp"
#include "foxh/context.hpp"

namespace foxh {

// ---------------------------------------------------------------------------
// Gamma machinery
// ---------------------------------------------------------------------------

// Principal branch of log Gamma(z), i.e. the continuation of log Gamma from
// the positive axis (real negative arguments take their limit from above).
// Uses mpfr directly for real arguments; otherwise Stirling's series after an
// argument shift, with reflection for Re(z) < 1/2.
Complex log_gamma(const Complex& z, const Ctx& ctx);

// Same at an explicit bit precision (internal workhorse).
Complex log_gamma_bits(const Complex& z, mpfr_prec_t bits, double pole_tol);

// Analytic branch of log sin(pi z) on Im(z) >= 0 that matches the principal
// value at z = 1/2 (its lower-half values follow by conjugation).
Complex log_sin_pi(const Complex& z, mpfr_prec_t bits);

// Rising factorial z (z+1) ... (z+n-1); empty product = 1.
Complex pochhammer(const Complex& z, long n);

// True iff z lies within `tol` (relative) of a non-positive integer; if so
// *which receives that integer.
bool near_nonpositive_integer(const Complex& z, double tol, long* which = nullptr);

// n! at the given precision.
Real factorial(long n, mpfr_prec_t bits);

// Exact Bernoulli number B_{2j} rounded to `bits` (from the integer tangent
// number triangle, so no cancellation enters).
Real bernoulli_even(long j, mpfr_prec_t bits);

// ---------------------------------------------------------------------------
// Bernoulli-Norlund polynomials
// ---------------------------------------------------------------------------

// Truncated expansion of the normalized kernel (t/(e^t-1))^order.
struct PolySeries {
  Complex order;
  std::vector<Complex> coefficients;  // c_0 = 1
};

// Coefficients of log(t/(e^t-1)) up to index count-1, computed from the
// series of (e^t-1)/t whose constant term is 1 (no singularity at t = 0).
// Cached per precision; snapshots are immutable and safe to share.
std::shared_ptr<const std::vector<Real>> norlund_log_kernel(mpfr_prec_t bits, size_t count);

// exp(order * log(t/(e^t-1))) truncated at k_max.
PolySeries norlund_kernel(const Complex& order, long k_max, const Ctx& ctx);

// B^{(order)}_k(x) from the generating function
// (t/(e^t-1))^order e^{xt} = sum_k B^{(order)}_k(x) t^k / k!.
Complex bernoulli_norlund(const Complex& order, long k, const Complex& x, const Ctx& ctx);

// The row B^{(order)}_0(x) .. B^{(order)}_{k_max}(x) in one pass over a shared
// kernel; entry-wise equal to bernoulli_norlund.
std::vector<Complex> bernoulli_norlund_row(long order, long k_max, const Complex& x, const Ctx& ctx);

// Scalar-generic row used by the coefficient pipeline (T is Real or Complex;
// the all-real case avoids complex arithmetic entirely).
template <class T>
std::vector<T> norlund_row_tpl(const T& order, long k_max, const T& x, mpfr_prec_t bits);

extern template std::vector<Real> norlund_row_tpl<Real>(const Real&, long, const Real&, mpfr_prec_t);
extern template std::vector<Complex> norlund_row_tpl<Complex>(const Complex&, long, const Complex&, mpfr_prec_t);

// Fused accumulate for the generic series kernels.
inline void acc_mul(Real& acc, const Real& a, const Real& b) { fma_acc(acc, a, b); }
inline void acc_mul(Complex& acc, const Complex& a, const Complex& b) { cfma(acc, a, b); }

template <class T>
T scalar_zero(mpfr_prec_t bits);
template <>
inline Real scalar_zero<Real>(mpfr_prec_t bits) { return Real::zero(bits); }
template <>
inline Complex scalar_zero<Complex>(mpfr_prec_t bits) { return Complex::zero(bits); }

template <class T>
T scalar_one(mpfr_prec_t bits);
template <>
inline Real scalar_one<Real>(mpfr_prec_t bits) { return Real(1, bits); }
template <>
inline Complex scalar_one<Complex>(mpfr_prec_t bits) { return Complex::one(bits); }

}  // namespace foxh

#endif  // FOXH_POLYMATH_HPP_
