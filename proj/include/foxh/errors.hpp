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

#ifndef FOXH_ERRORS_HPP_
#define FOXH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace foxh {

enum class errc {
  // parameter validation
  non_positive_scale,
  non_finite,
  empty_lower,
  invalid_argument,
  // derived-quantity constraints
  not_delta_neutral,
  non_integer_eta,
  eta_not_one,
  boundary_gamma,
  // special-function domain
  pole_of_gamma,
  pole_of_w,
  pochhammer_pole,
  // series domains
  outside_disk,
  outside_domain,
  branch_cut,
  below_abscissa,
  degenerate_tail,
  // numerics
  precision_exhausted,
  // oracle
  non_simple_poles,
  too_close_to_boundary,
  invalid_family_params,
  // cli
  io_error,
  bad_job,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace foxh

#endif  // FOXH_ERRORS_HPP_
