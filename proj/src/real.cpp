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

#include "foxh/real.hpp"

#include <cstdio>
#include <vector>

#include "foxh/errors.hpp"

namespace foxh {

Real Real::parse(const std::string& text, mpfr_prec_t prec) {
  Real r(prec);
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Real num = parse(text.substr(0, slash), prec);
    Real den = parse(text.substr(slash + 1), prec);
    if (den.is_zero()) raise(errc::invalid_argument, "zero denominator in '" + text + "'");
    return num / den;
  }
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
    raise(errc::invalid_argument, "cannot parse number '" + text + "'");
  return r;
}

Real Real::log_2pi(mpfr_prec_t prec) {
  Real r = Real::pi(prec);
  r *= 2;
  mpfr_log(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::string Real::str(int sig) const {
  if (sig < 1) sig = 1;
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  // Normalize -0 so that equal values always print identically.
  if (mpfr_zero_p(v_)) {
    std::string s = "0.";
    s.append(static_cast<size_t>(sig - 1), '0');
    return s + "e+00";
  }
  std::vector<char> buf(static_cast<size_t>(sig) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", sig - 1, v_);
  return std::string(buf.data());
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_positive_scale: return "NonPositiveScale";
    case errc::non_finite: return "NonFinite";
    case errc::empty_lower: return "EmptyLower";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::not_delta_neutral: return "NotDeltaNeutral";
    case errc::non_integer_eta: return "NonIntegerEta";
    case errc::eta_not_one: return "EtaNotOne";
    case errc::boundary_gamma: return "BoundaryGamma";
    case errc::pole_of_gamma: return "PoleOfGamma";
    case errc::pole_of_w: return "PoleOfW";
    case errc::pochhammer_pole: return "PochhammerPole";
    case errc::outside_disk: return "OutsideDisk";
    case errc::outside_domain: return "OutsideDomain";
    case errc::branch_cut: return "BranchCut";
    case errc::below_abscissa: return "BelowAbscissa";
    case errc::degenerate_tail: return "DegenerateTail";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::non_simple_poles: return "NonSimplePoles";
    case errc::too_close_to_boundary: return "TooCloseToBoundary";
    case errc::invalid_family_params: return "InvalidFamilyParams";
    case errc::io_error: return "IoError";
    case errc::bad_job: return "BadJob";
  }
  return "UnknownError";
}

}  // namespace foxh
