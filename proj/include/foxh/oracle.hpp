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

#ifndef FOXH_ORACLE_HPP_
#define FOXH_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "foxh/series.hpp"

namespace foxh {

// H(z) for |z| < rho as the sum of residues over the integrand's poles:
//   sum_{j,nu} [(-1)^nu/(nu! beta_j)]
//              [prod_{k!=j} Gamma(b_k - beta_k (b_j+nu)/beta_j)]
//            / [prod_i     Gamma(a_i - alpha_i (b_j+nu)/beta_j)]
//              z^{(b_j+nu)/beta_j}.
// Requires delta-neutral parameters, |z| < 0.98 rho, and simple poles only.
SeriesValue residue_series(const HParams& params, const Complex& z, long nu_max, const Ctx& ctx);

enum class ClosedFamily { beta_ratio, duplication };

// Exact fixtures, both as functions of t with z = rho t:
//   beta_ratio (alpha=beta=1, a-b integer >= 1, rho = 1):
//       H(t) = t^b (1-t)^{a-b-1} / Gamma(a-b)
//   duplication (alpha=(1), a=2b+1, beta=(1/2,1/2), b=(b,b+1/2), rho = 1/2):
//       H(rho t) = 2^{1-2b} sqrt(pi) t^{2b}
Complex closed_form(ClosedFamily family, const Complex& a, const Complex& b, const Complex& t,
                    const Ctx& ctx);

struct FamilyMatch {
  ClosedFamily family;
  Complex a, b;
};

// Structural detection of the two closed-form families.
std::optional<FamilyMatch> detect_family(const HParams& params, const Ctx& ctx);

struct ComparisonReport {
  std::vector<Complex> grid;
  std::vector<Complex> expansion_values;
  std::vector<Complex> oracle_values;
  std::vector<Real> abs_err;
  std::vector<Real> rel_err;
  std::vector<long> terms_used;
  Real max_rel_err;
};

// Evaluates the expansion and the independent oracle (closed form when the
// family matches, residue series otherwise) over the grid. Mismatches are
// reported, never raised.
ComparisonReport compare(const HParams& params, const Real& theta,
                         const std::vector<Complex>& t_grid, long n_max, long nu_max,
                         const Ctx& ctx);

// Deterministic generator of well-conditioned test families: small rational
// scales with equal sums, lower shifts in [0.2, 1.5] with pole separation
// >= 0.05, one upper shift solved so that eta = 1.
std::vector<HParams> draw_test_families(int count, std::uint64_t seed, const Ctx& ctx);

}  // namespace foxh

#endif  // FOXH_ORACLE_HPP_
