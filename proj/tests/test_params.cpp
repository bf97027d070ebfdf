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

#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace foxh;
using namespace foxh::testing;

namespace {

HParams min_scale_family(double min_scale, const Ctx& ctx) {
  // lower scales (s, 1-s), upper (1); shifts chosen so eta = 1
  mpfr_prec_t bits = ctx.parse_bits();
  HParams p;
  Real s(min_scale, bits);
  p.lower.emplace_back(s, Complex(0.4, 0.0, bits));
  p.lower.emplace_back(1 - s, Complex(0.9, 0.0, bits));
  p.upper.emplace_back(Real(1, bits), Complex(1.8, 0.0, bits));
  return p;
}

}  // namespace

TEST_CASE("validate accepts well-formed input and rejects bad shapes") {
  Ctx ctx = make_ctx(30);
  HParams good = beta_family(1.0, 1, ctx);
  CHECK_NOTHROW(validate(good));

  HParams neg = good;
  neg.lower[0].scale = Real(-0.5, ctx.parse_bits());
  CHECK_THROWS_WITH_AS(validate(neg), doctest::Contains("NonPositiveScale"), Error);

  HParams empty;
  empty.upper.emplace_back(Real(1, ctx.parse_bits()), Complex(2, ctx.parse_bits()));
  CHECK_THROWS_WITH_AS(validate(empty), doctest::Contains("EmptyLower"), Error);

  HParams nonfinite = good;
  nonfinite.upper[0].shift = Complex(Real::nan(ctx.parse_bits()), Real::zero(ctx.parse_bits()));
  CHECK_THROWS_WITH_AS(validate(nonfinite), doctest::Contains("NonFinite"), Error);
}

TEST_CASE("derive on the unit-scale family") {
  Ctx ctx = make_ctx(45);
  HParams p = beta_family(0.7, 1, ctx);  // a = b + 1
  DomainInfo d = derive(p, ctx);
  CHECK(std::abs(d.mu.to_double()) < 1e-40);
  CHECK(rel_err(d.beta_const, Real(1, ctx.bits())) < 1e-40);
  CHECK(rel_err(d.rho, Real(1, ctx.bits())) < 1e-40);
  CHECK(rel_err(d.gamma1, 2 * Real::pi(ctx.bits())) < 1e-40);
  CHECK(d.eta == 1);
  CHECK(rel_err(d.c0, Real(-1, ctx.bits())) < 1e-40);
  CHECK(rel_err(d.radius, Real(1, ctx.bits())) < 1e-40);
  CHECK(d.delta_neutral);
  CHECK(!d.boundary_gamma);
}

TEST_CASE("derive on the duplication family") {
  Ctx ctx = make_ctx(45);
  HParams p = duplication_family(0.3, ctx);
  DomainInfo d = derive(p, ctx);
  CHECK(std::abs(d.mu.to_double()) < 1e-40);
  CHECK(rel_err(d.beta_const, Real(2, ctx.bits())) < 1e-40);
  CHECK(rel_err(d.rho, Real(0.5, ctx.bits())) < 1e-40);
  CHECK(rel_err(d.gamma1, Real::pi(ctx.bits())) < 1e-40);
  CHECK(d.eta == 1);
  CHECK(rel_err(d.radius, Real(1, ctx.bits())) < 1e-40);
}

TEST_CASE("derive radius below the sector threshold") {
  Ctx ctx = make_ctx(45);
  HParams p = min_scale_family(0.125, ctx);  // gamma1 = pi/4
  DomainInfo d = derive(p, ctx);
  CHECK(rel_err(d.gamma1, Real::pi(ctx.bits()) / 4) < 1e-40);
  CHECK(std::abs(d.radius.to_double() - 2.0 * std::sin(M_PI / 8)) < 1e-12);
  CHECK(!d.boundary_gamma);

  // continuity at gamma1 = pi/3: radius -> 1 and the boundary flag trips
  HParams pb = min_scale_family(1.0 / 6.0, ctx);
  DomainInfo db = derive(pb, ctx);
  CHECK(db.boundary_gamma);
  CHECK(std::abs(db.radius.to_double() - 1.0) < 1e-9);
}

TEST_CASE("derive rejects non-delta-neutral and non-integer eta") {
  Ctx ctx = make_ctx(40);
  mpfr_prec_t bits = ctx.parse_bits();

  HParams bad;
  bad.lower.emplace_back(Real(1, bits), Complex(0.5, 0.0, bits));
  bad.upper.emplace_back(Real(0.75, bits), Complex(1.0, 0.0, bits));
  CHECK_THROWS_WITH_AS(derive(bad, ctx), doctest::Contains("NotDeltaNeutral"), Error);

  HParams bad_eta = beta_family(0.3, 1, ctx);
  bad_eta.upper[0].shift += Real(0.25, bits);
  CHECK_THROWS_WITH_AS(derive(bad_eta, ctx), doctest::Contains("NonIntegerEta"), Error);

  HParams cmplx_eta = beta_family(0.3, 1, ctx);
  cmplx_eta.upper[0].shift += Complex(0.0, 0.5, bits);
  CHECK_THROWS_WITH_AS(derive(cmplx_eta, ctx), doctest::Contains("NonIntegerEta"), Error);
}

TEST_CASE("shift moves shifts, preserves scales and derived quantities") {
  Ctx ctx = make_ctx(45);
  mpfr_prec_t bits = ctx.parse_bits();

  HParams p = beta_family(1.0, 1, ctx);  // a=2, b=1
  HParams same = shift(p, Complex::zero(bits));
  CHECK(same.upper[0].shift == p.upper[0].shift);

  HParams s1 = shift(p, Complex::one(bits));
  CHECK(rel_err(s1.upper[0].shift, Complex::one(bits)) < 1e-40);
  CHECK(abs(s1.lower[0].shift).to_double() < 1e-40);

  // duplication family, sigma = 2b: lower shifts become (0, 1/2), upper 1
  double b = 0.3;
  HParams d = duplication_family(b, ctx);
  HParams ds = shift(d, Complex(2 * b, 0.0, bits));
  CHECK(abs(ds.lower[0].shift).to_double() < 1e-15);
  CHECK(rel_err(ds.lower[1].shift, Complex(0.5, 0.0, bits)) < 1e-13);
  CHECK(rel_err(ds.upper[0].shift, Complex::one(bits)) < 1e-13);

  // mu, beta, rho, gamma1, eta unchanged under shift
  HParams g = min_scale_family(0.25, ctx);
  DomainInfo before = derive(g, ctx);
  DomainInfo after = derive(shift(g, Complex(0.37, -1.1, bits)), ctx);
  CHECK(rel_err(after.rho, before.rho) < 1e-40);
  CHECK(rel_err(after.gamma1, before.gamma1) < 1e-40);
  CHECK(after.eta == before.eta);
}

TEST_CASE("augment forces eta to 1") {
  Ctx ctx = make_ctx(45);
  mpfr_prec_t bits = ctx.parse_bits();

  // eta = 2 family: beta-ratio with a = b + 2
  HParams e2 = beta_family(0.4, 2, ctx);
  CHECK(derive(e2, ctx).eta == 2);
  HParams a2 = augment(e2, Real::zero(bits), 2);
  CHECK(a2.p() == 2);
  CHECK(a2.q() == 2);
  CHECK(rel_err(a2.upper[1].shift, Complex::one(bits)) < 1e-40);
  CHECK(rel_err(a2.lower[1].shift, Complex(2, bits)) < 1e-40);
  CHECK(derive(a2, ctx).eta == 1);

  // eta = 0 family: a = b (difference 0)
  HParams e0 = beta_family(0.4, 0, ctx);
  CHECK(derive(e0, ctx).eta == 0);
  HParams a0 = augment(e0, Real(0.5, bits), 0);
  CHECK(rel_err(a0.upper[1].shift, Complex(1.5, 0.0, bits)) < 1e-40);
  CHECK(rel_err(a0.lower[1].shift, Complex(0.5, 0.0, bits)) < 1e-40);
  CHECK(derive(a0, ctx).eta == 1);

  // eta = 1 input: the appended pair cancels
  HParams e1 = beta_family(0.4, 1, ctx);
  HParams a1 = augment(e1, Real(0.25, bits), 1);
  CHECK(a1.upper[1].shift == a1.lower[1].shift);
  CHECK(derive(a1, ctx).eta == 1);
}

TEST_CASE("rescale scales the scales and transforms rho, gamma1") {
  Ctx ctx = make_ctx(45);
  mpfr_prec_t bits = ctx.parse_bits();

  HParams p = min_scale_family(0.125, ctx);  // gamma1 = pi/4, rho != 1
  DomainInfo before = derive(p, ctx);

  HParams same = rescale(p, Real(1, bits));
  CHECK(same.lower[0].scale == p.lower[0].scale);

  HParams up = rescale(p, Real(2, bits));
  DomainInfo after = derive(up, ctx);
  CHECK(rel_err(after.gamma1, 2 * before.gamma1) < 1e-40);
  CHECK(rel_err(after.rho, before.rho * before.rho) < 1e-38);
  CHECK(std::abs(after.mu.to_double()) < 1e-38);
  CHECK(after.eta == before.eta);

  // duplication family: rho = 1/2 -> 1/4 under omega = 2
  HParams d = rescale(duplication_family(0.3, ctx), Real(2, bits));
  CHECK(rel_err(derive(d, ctx).rho, Real(0.25, ctx.bits())) < 1e-38);

  CHECK_THROWS_AS(rescale(p, Real(-1, bits)), Error);
}
