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

#ifndef FOXH_SERIES_HPP_
#define FOXH_SERIES_HPP_

#include <vector>

#include "foxh/coeffs.hpp"

namespace foxh {

// A truncated series evaluation: value, how many terms were summed, a
// heuristic truncation bound (10x the first omitted term), and whether that
// bound sits below half the working digits relative to the value.
struct SeriesValue {
  Complex value;
  long terms_used = 0;
  Real trunc_estimate;
  bool converged = false;
};

struct PoleRecord {
  Complex location;
  int multiplicity = 1;
  bool removable = false;  // simple pole at a non-positive integer
};

// Poles of the shifted integrand with multiplicities, and the largest real
// part among the non-removable ones (-inf when none survive).
struct PoleSet {
  std::vector<PoleRecord> records;  // sorted by descending real part
  Real beta_hat;
};

// phi(t) = t^{-sigma} H(rho t) = sum_n V_n(sigma) (1-t)^n, valid for
// |1-t| < radius, t off the cut (-inf, 0]. Requires eta = 1.
SeriesValue eval_phi(const HParams& params, const Complex& sigma, const Complex& t, long n_max,
                     const Ctx& ctx);
SeriesValue eval_phi_with(const CoefficientTable& v_table, const DomainInfo& info,
                          const Complex& t, const Ctx& ctx);

// H(rho t) = t^{theta+1} (1-t)^{eta-1} sum_n h_n/Gamma(eta+n) (1-t)^n for any
// integer eta.
SeriesValue eval_H_general(const HParams& params, const Real& theta, const Complex& t, long n_max,
                           const Ctx& ctx);
SeriesValue eval_H_general_with(const CoefficientTable& h_table, const DomainInfo& info,
                                const Real& theta, const Complex& t, const Ctx& ctx);

// omega-rescaled form: H(rho t) = omega t^{omega(theta+1)} (1-t^omega)^{eta-1}
//   sum_n h^_n/Gamma(eta+n) (1-t^omega)^n, convergent for |1-t^omega| < 1;
// the coefficients come from the rescaled parameter list.
SeriesValue eval_H_omega(const HParams& params, const Real& theta, const Real& omega,
                         const Complex& t, long n_max, const Ctx& ctx);

// W(z) = rho^{-z} prod Gamma(beta_j z + b_j) / prod Gamma(alpha_i z + a_i),
// evaluated through log-gamma sums and exponentiated once. Coincident
// numerator/denominator gamma poles cancel in the limit; a denominator pole
// alone yields 0; an uncancelled numerator pole raises PoleOfW.
Complex eval_W_direct(const HParams& params, const Complex& z, const Ctx& ctx);

// W(z) = sum_n h_n Gamma(z+theta+1)/Gamma(z+theta+eta+n+1), terms by downward
// gamma-ratio recurrence. Convergent for Re(z) above the abscissa; below it
// evaluation proceeds with converged = false.
SeriesValue eval_W_factorial(const HParams& params, const Real& theta, const Complex& z,
                             long n_max, const Ctx& ctx);
SeriesValue eval_W_factorial_with(const CoefficientTable& h_table, const DomainInfo& info,
                                  const Real& theta, const Complex& z, const Ctx& ctx,
                                  const Real* lambda = nullptr);

// The individual terms of the factorial series (diagnostics for decay fits).
std::vector<Complex> w_factorial_terms(const HParams& params, const Real& theta, const Complex& z,
                                       long n_max, const Ctx& ctx);

// Poles of h_sigma(s) = prod Gamma(b_j - sigma beta_j + beta_j s) /
// prod Gamma(a_i - sigma alpha_i + alpha_i s): candidates
// s = sigma - (b_j+nu)/beta_j merged within tolerance, with multiplicity
// reduced by coinciding denominator poles.
PoleSet pole_set(const HParams& params, const Complex& sigma, long depth, const Ctx& ctx);

// Convergence abscissa lambda = beta_hat(sigma) - Re(sigma) of the inverse
// factorial series; -inf when every pole is removable. Requires eta = 1 and
// gamma1 > pi/3 (BoundaryGamma otherwise).
Real abscissa(const HParams& params, const Complex& sigma, const Ctx& ctx, long depth = 64);

// Internal variant without the gamma1 gate.
Real abscissa_unchecked(const HParams& params, const Complex& sigma, const Ctx& ctx,
                        long depth = 64);

// limsup estimate of log|n f_n| / log n via a least-squares fit over the last
// third of the table; -inf for an identically-zero tail.
double order_estimate(const CoefficientTable& table);
double order_estimate_seq(const std::vector<Complex>& values, long digits_used, long first_index);

}  // namespace foxh

#endif  // FOXH_SERIES_HPP_
