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

#ifndef FOXH_COEFFS_HPP_
#define FOXH_COEFFS_HPP_

#include <vector>

#include "foxh/params.hpp"
#include "foxh/polymath.hpp"

namespace foxh {

// A computed coefficient sequence together with the precision it was built
// under and a per-index estimate of decimal digits lost to cancellation.
struct CoefficientTable {
  enum class Kind { q, l, V, h };
  Kind kind = Kind::V;
  std::vector<Complex> values;  // q tables hold q_1.. at index 0..
  Complex sigma_or_theta;
  long digits_used = 0;
  std::vector<double> cancellation_report;

  long size() const { return static_cast<long>(values.size()); }
};

// Moments q_m, m = 1..m_max:
// q_m = (-1)^{m+1}/(m+1) [ sum_k B^{(1)}_{m+1}(b_k)/beta_k^m
//                        - sum_j B^{(1)}_{m+1}(a_j)/alpha_j^m ].
CoefficientTable q_moments(const HParams& params, long m_max, const Ctx& ctx);

// l_0 = 1, l_r = (1/r) sum_{m=1..r} q_m l_{r-m}.
CoefficientTable l_sequence(const CoefficientTable& q_table, long r_max);

// (2 pi)^{(q-p)/2} prod beta_k^{b_k - 1/2} prod alpha_j^{1/2 - a_j}.
Complex prefactor(const HParams& params, const Ctx& ctx);

// V_n(sigma) = prefactor * sum_{k=0..n} (-1)^k l_{n-k}/(k!(n-k)!) B^{(n+1)}_k(1-sigma),
// n = 0..n_max. Requires eta = 1. Precision escalates (doubling, up to
// ctx.escalation_factor * ctx.digits) while fewer than 10 digits survive the
// worst cancellation; PrecisionExhausted beyond the cap.
CoefficientTable v_coefficients(const HParams& params, const Complex& sigma, long n_max, const Ctx& ctx);

// h_n = V'_n(theta+eta) n! where V' is taken over the augmented parameter
// list (upper + (1,theta+1), lower + (1,theta+eta)); works for any integer eta.
CoefficientTable h_coefficients(const HParams& params, const Real& theta, long n_max, const Ctx& ctx);

}  // namespace foxh

#endif  // FOXH_COEFFS_HPP_
