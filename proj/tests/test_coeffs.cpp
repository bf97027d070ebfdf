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

TEST_CASE("q moments of the unit-scale ratio family are (-b)^m") {
  Ctx ctx = make_ctx(50);
  double b = 0.4;
  HParams p = beta_family(b, 1, ctx);
  CoefficientTable q = q_moments(p, 10, ctx);
  REQUIRE(q.size() == 10);
  Real br = real(b, ctx);
  for (long m = 1; m <= 10; ++m) {
    Real want = pow(-br, m);
    CHECK_MESSAGE(rel_err(q.values[static_cast<size_t>(m - 1)],
                          Complex(want, Real::zero(ctx.bits()))) < 1e-40,
                  "m=", m);
  }
}

TEST_CASE("q moments vanish for identical upper and lower lists") {
  Ctx ctx = make_ctx(40);
  mpfr_prec_t bits = ctx.parse_bits();
  HParams p;
  p.upper.emplace_back(Real(0.75, bits), Complex(0.6, 0.0, bits));
  p.lower.emplace_back(Real(0.75, bits), Complex(0.6, 0.0, bits));
  CoefficientTable q = q_moments(p, 8, ctx);
  for (const auto& v : q.values) CHECK(abs(v).to_double() < 1e-35);
}

TEST_CASE("q moments of the duplication family are (-2b)^m") {
  Ctx ctx = make_ctx(50);
  double b = 0.3;
  HParams p = duplication_family(b, ctx);
  CoefficientTable q = q_moments(p, 8, ctx);
  Real tb = real(2 * b, ctx);
  for (long m = 1; m <= 8; ++m)
    CHECK(rel_err(q.values[static_cast<size_t>(m - 1)],
                  Complex(pow(-tb, m), Real::zero(ctx.bits()))) < 1e-38);
}

TEST_CASE("l recurrence") {
  Ctx ctx = make_ctx(50);

  // all q zero -> l = (1, 0, 0, ...)
  HParams same;
  mpfr_prec_t bits = ctx.parse_bits();
  same.upper.emplace_back(Real(1, bits), Complex(0.6, 0.0, bits));
  same.lower.emplace_back(Real(1, bits), Complex(0.6, 0.0, bits));
  CoefficientTable l0 = l_sequence(q_moments(same, 6, ctx), 6);
  CHECK(rel_err(l0.values[0], Complex::one(ctx.bits())) < 1e-45);
  for (size_t r = 1; r < l0.values.size(); ++r) CHECK(abs(l0.values[r]).to_double() < 1e-35);

  // q_m = (-b)^m -> l_r = (-b)^r; check l_1 = -b and l_2 = b^2 explicitly
  double b = 0.4;
  CoefficientTable l = l_sequence(q_moments(beta_family(b, 1, ctx), 10, ctx), 10);
  Real br = real(b, ctx);
  CHECK(rel_err(l.values[1], Complex(-br, Real::zero(ctx.bits()))) < 1e-40);
  CHECK(rel_err(l.values[2], Complex(br * br, Real::zero(ctx.bits()))) < 1e-40);
  for (long r = 3; r <= 10; ++r)
    CHECK(rel_err(l.values[static_cast<size_t>(r)],
                  Complex(pow(-br, r), Real::zero(ctx.bits()))) < 1e-38);

  CHECK_THROWS_AS(l_sequence(q_moments(same, 3, ctx), 5), Error);
}

TEST_CASE("prefactor closed forms") {
  Ctx ctx = make_ctx(60);
  mpfr_prec_t bits = ctx.bits();

  CHECK(rel_err(prefactor(beta_family(0.7, 1, ctx), ctx), Complex::one(bits)) < 1e-55);

  double b = 0.3;
  Complex pf = prefactor(duplication_family(b, ctx), ctx);
  Real want = pow(Real(2, bits), real(1 - 2 * b, ctx)) * sqrt(Real::pi(bits));
  CHECK(rel_err(pf, Complex(want, Real::zero(bits))) < 1e-55);

  HParams bare;  // p = 0, q = 1, beta = 1
  bare.lower.emplace_back(Real(1, ctx.parse_bits()), Complex(1.7, 0.0, ctx.parse_bits()));
  CHECK(rel_err(prefactor(bare, ctx), Complex(sqrt(2 * Real::pi(bits)), Real::zero(bits))) < 1e-55);
}

TEST_CASE("V coefficients: unit ratio family collapses to V_0 = 1") {
  Ctx ctx = make_ctx(60);
  double b = 0.6;
  HParams p = beta_family(b, 1, ctx);
  CoefficientTable v = v_coefficients(p, cplx(b, 0, ctx), 12, ctx);
  CHECK(rel_err(v.values[0], Complex::one(ctx.bits())) < 1e-50);
  for (size_t n = 1; n < v.values.size(); ++n) CHECK(abs(v.values[n]).to_double() < 1e-40);
}

TEST_CASE("V coefficients: duplication family collapses to the constant") {
  Ctx ctx = make_ctx(60);
  double b = 0.3;
  HParams p = duplication_family(b, ctx);
  CoefficientTable v = v_coefficients(p, cplx(2 * b, 0, ctx), 20, ctx);
  mpfr_prec_t bits = ctx.bits();
  Real want = pow(Real(2, bits), real(1 - 2 * b, ctx)) * sqrt(Real::pi(bits));
  CHECK(rel_err(v.values[0], Complex(want, Real::zero(bits))) < 1e-50);
  for (size_t n = 1; n < v.values.size(); ++n)
    CHECK(abs(v.values[n]).to_double() < 1e-35 * want.to_double());
}

TEST_CASE("V_0 equals the prefactor for any sigma") {
  Ctx ctx = make_ctx(45);
  HParams p = duplication_family(0.45, ctx);
  for (double s : {-1.3, 0.0, 2.71}) {
    CoefficientTable v = v_coefficients(p, cplx(s, 0.3, ctx), 3, ctx);
    CHECK(rel_err(v.values[0], prefactor(p, ctx)) < 1e-38);
  }
}

TEST_CASE("V coefficients of the ratio family match the binomial closed form") {
  Ctx ctx = make_ctx(60);
  double b = 0.35;
  HParams p = beta_family(b, 1, ctx);

  // V_n(sigma) = (sigma - b)_n / n!
  auto check_sigma = [&](const Complex& sigma, double tol) {
    CoefficientTable v = v_coefficients(p, sigma, 25, ctx);
    mpfr_prec_t bits = ctx.bits();
    Complex smb = sigma - real(b, ctx);
    for (long n = 0; n <= 25; ++n) {
      Complex want = pochhammer(smb, n) / factorial(n, bits);
      CHECK_MESSAGE(abs(v.values[static_cast<size_t>(n)] - want).to_double() <
                        tol * std::max(1.0, abs(want).to_double()),
                    "n=", n, " sigma=(", sigma.re.to_double(), ",", sigma.im.to_double(), ")");
    }
  };
  check_sigma(cplx(1.2, 0.0, ctx), 1e-45);   // real path
  check_sigma(cplx(0.9, -0.7, ctx), 1e-45);  // complex path
}

TEST_CASE("V coefficients are stable across precision changes") {
  Ctx ctx60 = make_ctx(60);
  Ctx ctx100 = make_ctx(100);
  HParams p60 = duplication_family(0.37, ctx60);
  CoefficientTable a = v_coefficients(p60, cplx(0.2, 0, ctx60), 30, ctx60);
  CoefficientTable b = v_coefficients(p60, cplx(0.2, 0, ctx100), 30, ctx100);
  for (size_t n = 0; n <= 30; ++n) {
    double scale = std::max(1e-30, abs(b.values[n]).to_double());
    CHECK(abs(a.values[n] - b.values[n]).to_double() / scale < 1e-35);
  }
}

TEST_CASE("h coefficients unwind to V of the augmented family") {
  Ctx ctx = make_ctx(55);
  mpfr_prec_t bits = ctx.bits();
  double b = 0.52;
  HParams p = beta_family(b, 2, ctx);  // eta = 2
  Real theta = real(0.3, ctx);
  CoefficientTable h = h_coefficients(p, theta, 15, ctx);

  HParams aug = augment(p, theta, 2);
  CoefficientTable v = v_coefficients(aug, Complex(theta + 2, Real::zero(theta.prec())), 15, ctx);
  for (long n = 0; n <= 15; ++n) {
    Complex want = v.values[static_cast<size_t>(n)] * factorial(n, bits);
    CHECK(rel_err(h.values[static_cast<size_t>(n)], want) < 1e-40);
  }
}

TEST_CASE("h coefficients: eta = 1 reduces to V of the original family") {
  Ctx ctx = make_ctx(55);
  double b = 0.4;
  HParams p = beta_family(b, 1, ctx);
  Real theta = real(-0.2, ctx);
  CoefficientTable h = h_coefficients(p, theta, 12, ctx);
  CoefficientTable v =
      v_coefficients(p, Complex(theta + 1, Real::zero(theta.prec())), 12, ctx);
  mpfr_prec_t bits = ctx.bits();
  for (long n = 0; n <= 12; ++n) {
    Complex want = v.values[static_cast<size_t>(n)] * factorial(n, bits);
    CHECK(abs(h.values[static_cast<size_t>(n)] - want).to_double() <
          1e-40 * std::max(1.0, abs(want).to_double()));
  }
}

TEST_CASE("h_0 of the duplication family reproduces the constant") {
  Ctx ctx = make_ctx(60);
  double b = 0.3;
  HParams p = duplication_family(b, ctx);
  CoefficientTable h = h_coefficients(p, real(2 * b - 1, ctx), 10, ctx);
  mpfr_prec_t bits = ctx.bits();
  Real want = pow(Real(2, bits), real(1 - 2 * b, ctx)) * sqrt(Real::pi(bits));
  CHECK(rel_err(h.values[0], Complex(want, Real::zero(bits))) < 1e-50);
  for (size_t n = 1; n < h.values.size(); ++n)
    CHECK(abs(h.values[n]).to_double() < 1e-30);
}

TEST_CASE("root test: |V_n|^{1/n} stays near 1/radius") {
  Ctx ctx = make_ctx(120);
  double b = 0.35;
  HParams p = beta_family(b, 1, ctx);
  CoefficientTable v = v_coefficients(p, cplx(2.0, 0, ctx), 60, ctx);
  double run_max = 0;
  for (long n = 40; n <= 60; ++n) {
    double mag = abs(v.values[static_cast<size_t>(n)]).to_double();
    run_max = std::max(run_max, std::pow(mag, 1.0 / static_cast<double>(n)));
  }
  CHECK(run_max < 1.1);  // radius is 1
  CHECK(run_max > 0.75);
}

TEST_CASE("escalation cap raises PrecisionExhausted") {
  Ctx ctx = make_ctx(16);
  ctx.escalation_factor = 2;
  HParams p = beta_family(0.3, 1, ctx);
  CHECK_THROWS_WITH_AS(v_coefficients(p, cplx(0.9, 0, ctx), 120, ctx),
                       doctest::Contains("PrecisionExhausted"), Error);
}

TEST_CASE("v_coefficients demands eta = 1") {
  Ctx ctx = make_ctx(40);
  HParams p = beta_family(0.3, 2, ctx);
  CHECK_THROWS_WITH_AS(v_coefficients(p, cplx(0.5, 0, ctx), 5, ctx),
                       doctest::Contains("EtaNotOne"), Error);
}
