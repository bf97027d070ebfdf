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

#ifndef FOXH_PARAMS_HPP_
#define FOXH_PARAMS_HPP_

#include <vector>

#include "foxh/complex.hpp"
#include "foxh/context.hpp"

namespace foxh {

// One gamma factor Gamma(shift + scale * s) of the integrand.
struct GammaFactor {
  Real scale;     // positive real
  Complex shift;  // complex offset

  GammaFactor() = default;
  GammaFactor(Real sc, Complex sh) : scale(std::move(sc)), shift(std::move(sh)) {}
  GammaFactor(double sc, double sh, mpfr_prec_t prec)
      : scale(sc, prec), shift(sh, 0.0, prec) {}
};

// Parameters of H^{q,0}_{p,q}: `upper` are the denominator factors
// (alpha_i, a_i), i = 1..p; `lower` the numerator factors (beta_j, b_j),
// j = 1..q.
struct HParams {
  std::vector<GammaFactor> upper;
  std::vector<GammaFactor> lower;

  size_t p() const { return upper.size(); }
  size_t q() const { return lower.size(); }
  bool shifts_real() const {
    for (const auto& f : upper)
      if (!f.shift.im.is_zero()) return false;
    for (const auto& f : lower)
      if (!f.shift.im.is_zero()) return false;
    return true;
  }
};

// Quantities derived from a delta-neutral parameter set.
struct DomainInfo {
  Real mu;             // sum beta_j - sum alpha_i (reported residual)
  Real beta_const;     // prod alpha^alpha * prod beta^-beta
  Real rho;            // 1 / beta_const; positive singular point
  Real gamma1;         // 2 pi min(all scales); analyticity sector half-angle
  long eta = 0;        // sum a - sum b + (q - p)/2, rounded integer
  Real c0;             // (-1)^eta (2 pi)^{q-p}
  Real radius;         // expansion radius about t = 1
  bool delta_neutral = false;
  bool boundary_gamma = false;  // gamma1 at pi/3 within tolerance
};

// Checks HParams invariants and returns the input unchanged.
const HParams& validate(const HParams& params);

// Derived domain quantities. Requires |mu| within ctx.integer_tol and eta
// within ctx.integer_tol of an integer.
DomainInfo derive(const HParams& params, const Ctx& ctx);

// a_i -> a_i - sigma alpha_i, b_j -> b_j - sigma beta_j; scales unchanged.
HParams shift(const HParams& params, const Complex& sigma);

// Appends (1, theta+1) to the upper list and (1, theta+eta) to the lower
// list; the derived eta of the result is 1.
HParams augment(const HParams& params, const Real& theta, long eta);

// Multiplies every scale by omega > 0; shifts unchanged.
HParams rescale(const HParams& params, const Real& omega);

}  // namespace foxh

#endif  // FOXH_PARAMS_HPP_
