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

#ifndef FOXH_CONTEXT_HPP_
#define FOXH_CONTEXT_HPP_

#include <cmath>

#include <mpfr.h>

#include "foxh/errors.hpp"

namespace foxh {

// Working-precision settings, passed explicitly to every operation.
// `digits` is decimal significant digits; coefficient tables may escalate
// internally up to `escalation_factor` times this when cancellation eats
// the working precision.
struct PrecisionContext {
  long digits = 60;
  double pole_merge_tol = 1e-9;  // relative; poles closer than this coincide
  double integer_tol = 1e-9;     // slack for eta integrality and |mu| = 0
  int escalation_factor = 4;

  void check() const {
    if (digits < 16) raise(errc::invalid_argument, "digits must be >= 16");
    if (!(pole_merge_tol > 0 && pole_merge_tol < 1))
      raise(errc::invalid_argument, "pole_merge_tol must lie in (0,1)");
    if (!(integer_tol > 0 && integer_tol < 1))
      raise(errc::invalid_argument, "integer_tol must lie in (0,1)");
  }

  static mpfr_prec_t bits_for(long dec_digits) {
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(dec_digits) * 3.3219280948873626)) + 32;
  }

  mpfr_prec_t bits() const { return bits_for(digits); }

  // Precision for storing parameters: generous enough that escalated
  // passes still treat stored values as exact.
  mpfr_prec_t parse_bits() const { return bits_for(digits * escalation_factor) + 32; }

  PrecisionContext with_digits(long d) const {
    PrecisionContext c = *this;
    c.digits = d;
    return c;
  }
};

using Ctx = PrecisionContext;

}  // namespace foxh

#endif  // FOXH_CONTEXT_HPP_
