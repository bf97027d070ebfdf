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

#include "foxh/params.hpp"

namespace foxh {

const HParams& validate(const HParams& params) {
  if (params.q() == 0) raise(errc::empty_lower, "q = 0: at least one lower factor required");
  auto check = [](const GammaFactor& f, const char* side) {
    if (!f.scale.is_finite() || !f.shift.is_finite())
      raise(errc::non_finite, std::string("non-finite entry in ") + side + " list");
    if (f.scale.sign() <= 0)
      raise(errc::non_positive_scale, std::string("scale <= 0 in ") + side + " list");
  };
  for (const auto& f : params.upper) check(f, "upper");
  for (const auto& f : params.lower) check(f, "lower");
  return params;
}

DomainInfo derive(const HParams& params, const Ctx& ctx) {
  validate(params);
  mpfr_prec_t bits = ctx.bits();
  DomainInfo info;

  Real mu = Real::zero(bits);
  for (const auto& f : params.lower) mu += f.scale;
  for (const auto& f : params.upper) mu -= f.scale;
  info.mu = mu;
  Real tol(ctx.integer_tol, bits);
  if (abs(mu) > tol)
    raise(errc::not_delta_neutral, "mu = " + mu.str(6) + " exceeds tolerance; expansions need mu = 0");
  info.delta_neutral = true;

  // log beta = sum alpha log alpha - sum beta log beta
  Real log_beta = Real::zero(bits);
  for (const auto& f : params.upper) fma_acc(log_beta, f.scale, log(f.scale));
  for (const auto& f : params.lower) fms_acc(log_beta, f.scale, log(f.scale));
  info.beta_const = exp(log_beta);
  info.rho = 1 / info.beta_const;

  Real mn = params.lower[0].scale;
  for (const auto& f : params.lower) mn = min(mn, f.scale);
  for (const auto& f : params.upper) mn = min(mn, f.scale);
  Real pi = Real::pi(bits);
  info.gamma1 = 2 * pi * mn;

  Complex eta_c = Complex::zero(bits);
  for (const auto& f : params.upper) eta_c += f.shift;
  for (const auto& f : params.lower) eta_c -= f.shift;
  long qp = static_cast<long>(params.q()) - static_cast<long>(params.p());
  eta_c.re += Real(qp, bits) / 2;
  Real eta_round = round_nearest(eta_c.re);
  if (abs(eta_c.im) > tol || abs(eta_c.re - eta_round) > tol)
    raise(errc::non_integer_eta,
          "eta = (" + eta_c.re.str(6) + ", " + eta_c.im.str(6) + ") is not an integer within tolerance");
  info.eta = eta_round.to_long();

  Real two_pi_pow = pow(2 * pi, qp);
  info.c0 = (info.eta % 2 == 0) ? two_pi_pow : -two_pi_pow;

  Real third_pi = pi / 3;
  Real rel = abs(info.gamma1 - third_pi) / third_pi;
  info.boundary_gamma = rel <= tol;
  if (info.gamma1 >= third_pi) {
    info.radius = Real(1, bits);
  } else {
    Real half = info.gamma1 / 2;
    info.radius = 2 * sin(half);
  }
  return info;
}

HParams shift(const HParams& params, const Complex& sigma) {
  HParams out = params;
  for (auto& f : out.upper) f.shift -= sigma * f.scale;
  for (auto& f : out.lower) f.shift -= sigma * f.scale;
  return out;
}

HParams augment(const HParams& params, const Real& theta, long eta) {
  HParams out = params;
  mpfr_prec_t prec = theta.prec();
  Real one(1, prec);
  out.upper.emplace_back(one, Complex(theta + 1, Real::zero(prec)));
  out.lower.emplace_back(one, Complex(theta + eta, Real::zero(prec)));
  return out;
}

HParams rescale(const HParams& params, const Real& omega) {
  if (!(omega.sign() > 0) || !omega.is_finite())
    raise(errc::invalid_argument, "rescale factor must be a positive real");
  HParams out = params;
  for (auto& f : out.upper) f.scale *= omega;
  for (auto& f : out.lower) f.scale *= omega;
  return out;
}

}  // namespace foxh
