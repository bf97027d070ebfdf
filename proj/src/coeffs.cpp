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

#include "foxh/coeffs.hpp"

#include <algorithm>
#include <cmath>

namespace foxh {

namespace {

constexpr double kNegLarge = -1e18;

double alog10(const Real& x) {
  if (x.is_zero() || !x.is_finite()) return kNegLarge;
  return static_cast<double>(mpfr_get_exp(x.raw())) * 0.30102999566398120;
}

double alog10(const Complex& z) { return std::max(alog10(z.re), alog10(z.im)); }

template <class T>
struct Tagged {
  std::vector<T> values;
  std::vector<double> term_max;  // log10 of the largest contributing term
};

// q_m for m = 1..m_max.
template <class T>
Tagged<T> q_pipeline(const std::vector<Real>& scales_low, const std::vector<T>& shifts_low,
                     const std::vector<Real>& scales_up, const std::vector<T>& shifts_up,
                     long m_max, mpfr_prec_t bits) {
  Tagged<T> out;
  out.values.assign(static_cast<size_t>(m_max), scalar_zero<T>(bits));
  out.term_max.assign(static_cast<size_t>(m_max), kNegLarge);

  auto fold = [&](const std::vector<Real>& scales, const std::vector<T>& shifts, bool positive) {
    for (size_t f = 0; f < scales.size(); ++f) {
      std::vector<T> row = norlund_row_tpl<T>(scalar_one<T>(bits), m_max + 1, shifts[f], bits);
      Real inv_scale = 1 / scales[f];
      Real sp(1, bits);  // scale^{-m}
      for (long m = 1; m <= m_max; ++m) {
        sp *= inv_scale;
        T term = row[static_cast<size_t>(m + 1)] * sp;
        auto& tm = out.term_max[static_cast<size_t>(m - 1)];
        tm = std::max(tm, alog10(term) - std::log10(static_cast<double>(m + 1)));
        if (!positive) term = -term;
        out.values[static_cast<size_t>(m - 1)] += term;
      }
    }
  };
  fold(scales_low, shifts_low, true);
  fold(scales_up, shifts_up, false);

  for (long m = 1; m <= m_max; ++m) {
    T& v = out.values[static_cast<size_t>(m - 1)];
    v /= (m % 2 == 0) ? -(m + 1) : (m + 1);
  }
  return out;
}

// l_0 = 1, l_r = (1/r) sum q_m l_{r-m}.
template <class T>
Tagged<T> l_pipeline(const Tagged<T>& q, long r_max, mpfr_prec_t bits) {
  Tagged<T> out;
  out.values.reserve(static_cast<size_t>(r_max) + 1);
  out.term_max.assign(static_cast<size_t>(r_max) + 1, kNegLarge);
  out.values.push_back(scalar_one<T>(bits));
  for (long r = 1; r <= r_max; ++r) {
    T acc = scalar_zero<T>(bits);
    double tm = kNegLarge;
    for (long m = 1; m <= r; ++m) {
      T term = q.values[static_cast<size_t>(m - 1)] * out.values[static_cast<size_t>(r - m)];
      tm = std::max(tm, alog10(term));
      acc += term;
    }
    acc /= r;
    out.values.push_back(acc);
    out.term_max[static_cast<size_t>(r)] = tm - std::log10(static_cast<double>(r));
  }
  return out;
}

struct VBuild {
  std::vector<Complex> values;
  std::vector<double> loss;  // per-n digits lost (chain max over q, l, V terms)
  double worst_quality = 0;  // digits surviving at the worst index
};

template <class T>
T to_scalar(const Complex& z, mpfr_prec_t bits);

template <>
Real to_scalar<Real>(const Complex& z, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set(r.raw(), z.re.raw(), MPFR_RNDN);
  return r;
}

template <>
Complex to_scalar<Complex>(const Complex& z, mpfr_prec_t bits) {
  Complex c(bits);
  mpfr_set(c.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(c.im.raw(), z.im.raw(), MPFR_RNDN);
  return c;
}

template <class T>
std::vector<T> shifts_of(const std::vector<GammaFactor>& fs, mpfr_prec_t bits) {
  std::vector<T> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(to_scalar<T>(f.shift, bits));
  return out;
}

std::vector<Real> scales_of(const std::vector<GammaFactor>& fs, mpfr_prec_t bits) {
  std::vector<Real> out;
  out.reserve(fs.size());
  for (const auto& f : fs) {
    Real r(bits);
    mpfr_set(r.raw(), f.scale.raw(), MPFR_RNDN);
    out.push_back(r);
  }
  return out;
}

template <class T>
VBuild v_build(const HParams& params, const Complex& sigma, const Complex& pf, long n_max,
               mpfr_prec_t bits) {
  std::vector<Real> sl = scales_of(params.lower, bits);
  std::vector<Real> su = scales_of(params.upper, bits);
  std::vector<T> bl = shifts_of<T>(params.lower, bits);
  std::vector<T> bu = shifts_of<T>(params.upper, bits);

  Tagged<T> q = q_pipeline<T>(sl, bl, su, bu, n_max, bits);
  Tagged<T> l = l_pipeline<T>(q, n_max, bits);

  // running chain maxima: errors in q and l feed every later V_n
  std::vector<double> chain(static_cast<size_t>(n_max) + 1, kNegLarge);
  {
    double run = kNegLarge;
    for (long n = 0; n <= n_max; ++n) {
      if (n >= 1) run = std::max(run, q.term_max[static_cast<size_t>(n - 1)]);
      run = std::max(run, l.term_max[static_cast<size_t>(n)]);
      chain[static_cast<size_t>(n)] = run;
    }
  }

  std::vector<Real> inv_fact;
  inv_fact.reserve(static_cast<size_t>(n_max) + 1);
  Real f(1, bits);
  inv_fact.push_back(f);
  for (long j = 1; j <= n_max; ++j) {
    f /= j;
    inv_fact.push_back(f);
  }

  T x = to_scalar<T>(Complex(1, bits) - sigma, bits);
  T pfs = to_scalar<T>(pf, bits);

  VBuild out;
  out.values.reserve(static_cast<size_t>(n_max) + 1);
  out.loss.assign(static_cast<size_t>(n_max) + 1, 0.0);

  std::vector<double> vlog(static_cast<size_t>(n_max) + 1, kNegLarge);
  for (long n = 0; n <= n_max; ++n) {
    T order = scalar_one<T>(bits);
    order *= n + 1;
    std::vector<T> row = norlund_row_tpl<T>(order, n, x, bits);
    T acc = scalar_zero<T>(bits);
    double tm = kNegLarge;
    for (long k = 0; k <= n; ++k) {
      T term = row[static_cast<size_t>(k)] * l.values[static_cast<size_t>(n - k)];
      term *= inv_fact[static_cast<size_t>(k)];
      term *= inv_fact[static_cast<size_t>(n - k)];
      tm = std::max(tm, alog10(term));
      if (k % 2 != 0) term = -term;
      acc += term;
    }
    acc *= pfs;
    double pf_log = alog10(pfs);
    chain[static_cast<size_t>(n)] = std::max(chain[static_cast<size_t>(n)], tm) + pf_log;
    vlog[static_cast<size_t>(n)] = alog10(acc);
    if constexpr (std::is_same_v<T, Real>) {
      out.values.push_back(Complex(acc, Real::zero(bits)));
    } else {
      out.values.push_back(acc);
    }
  }

  double scale = kNegLarge;
  for (double v : vlog) scale = std::max(scale, v);
  double digits10 = static_cast<double>(bits) * 0.30102999566398120;
  double worst = 1e18;
  for (long n = 0; n <= n_max; ++n) {
    double lost = std::max(0.0, chain[static_cast<size_t>(n)] - vlog[static_cast<size_t>(n)]);
    out.loss[static_cast<size_t>(n)] = std::min(lost, digits10);
    worst = std::min(worst, digits10 - std::max(0.0, chain[static_cast<size_t>(n)] - scale));
  }
  out.worst_quality = worst;
  return out;
}

}  // namespace

CoefficientTable q_moments(const HParams& params, long m_max, const Ctx& ctx) {
  validate(params);
  if (m_max < 1) raise(errc::invalid_argument, "q_moments: m_max must be positive");
  DomainInfo info = derive(params, ctx);  // enforces delta-neutrality
  (void)info;
  mpfr_prec_t bits = ctx.bits();
  CoefficientTable t;
  t.kind = CoefficientTable::Kind::q;
  t.digits_used = ctx.digits;
  t.sigma_or_theta = Complex::zero(bits);
  if (params.shifts_real()) {
    auto q = q_pipeline<Real>(scales_of(params.lower, bits), shifts_of<Real>(params.lower, bits),
                              scales_of(params.upper, bits), shifts_of<Real>(params.upper, bits),
                              m_max, bits);
    for (long m = 0; m < m_max; ++m) {
      t.values.emplace_back(q.values[static_cast<size_t>(m)], Real::zero(bits));
      t.cancellation_report.push_back(
          std::max(0.0, q.term_max[static_cast<size_t>(m)] - alog10(q.values[static_cast<size_t>(m)])));
    }
  } else {
    auto q = q_pipeline<Complex>(scales_of(params.lower, bits), shifts_of<Complex>(params.lower, bits),
                                 scales_of(params.upper, bits), shifts_of<Complex>(params.upper, bits),
                                 m_max, bits);
    for (long m = 0; m < m_max; ++m) {
      t.values.push_back(q.values[static_cast<size_t>(m)]);
      t.cancellation_report.push_back(
          std::max(0.0, q.term_max[static_cast<size_t>(m)] - alog10(q.values[static_cast<size_t>(m)])));
    }
  }
  return t;
}

CoefficientTable l_sequence(const CoefficientTable& q_table, long r_max) {
  if (q_table.kind != CoefficientTable::Kind::q)
    raise(errc::invalid_argument, "l_sequence expects a q table");
  if (r_max < 1 || q_table.size() < r_max)
    raise(errc::invalid_argument, "l_sequence: q table too short for r_max");
  mpfr_prec_t bits = Ctx::bits_for(q_table.digits_used);
  Tagged<Complex> q;
  q.values = q_table.values;
  auto l = l_pipeline<Complex>(q, r_max, bits);
  CoefficientTable t;
  t.kind = CoefficientTable::Kind::l;
  t.digits_used = q_table.digits_used;
  t.sigma_or_theta = q_table.sigma_or_theta;
  t.values = std::move(l.values);
  for (long r = 0; r <= r_max; ++r)
    t.cancellation_report.push_back(
        std::max(0.0, l.term_max[static_cast<size_t>(r)] - alog10(t.values[static_cast<size_t>(r)])));
  return t;
}

Complex prefactor(const HParams& params, const Ctx& ctx) {
  validate(params);
  mpfr_prec_t bits = ctx.bits();
  Real half(0.5, bits);
  Complex lg = Complex::zero(bits);
  long qp = static_cast<long>(params.q()) - static_cast<long>(params.p());
  lg.re += Real::log_2pi(bits) * Real(qp, bits) / 2;
  for (const auto& f : params.lower) lg += (f.shift - half) * log(f.scale);
  for (const auto& f : params.upper) lg += (half - f.shift) * log(f.scale);
  return exp(lg);
}

CoefficientTable v_coefficients(const HParams& params, const Complex& sigma, long n_max,
                                const Ctx& ctx) {
  validate(params);
  if (n_max < 0) raise(errc::invalid_argument, "v_coefficients: n_max must be >= 0");
  DomainInfo info = derive(params, ctx);
  if (info.eta != 1)
    raise(errc::eta_not_one, "V coefficients require eta = 1 (augment first for other eta)");

  bool real_path = params.shifts_real() && sigma.im.is_zero();
  long digits = ctx.digits;
  const long cap = ctx.digits * ctx.escalation_factor;
  for (;;) {
    mpfr_prec_t bits = Ctx::bits_for(digits);
    Complex pf = prefactor(params, ctx.with_digits(digits));
    VBuild b = real_path ? v_build<Real>(params, sigma, pf, n_max, bits)
                         : v_build<Complex>(params, sigma, pf, n_max, bits);
    if (b.worst_quality >= 10.0 || digits >= cap) {
      if (b.worst_quality < 10.0)
        raise(errc::precision_exhausted,
              "cancellation leaves < 10 digits at the escalation cap (" + std::to_string(cap) +
                  " digits); raise ctx.digits");
      CoefficientTable t;
      t.kind = CoefficientTable::Kind::V;
      t.digits_used = digits;
      t.sigma_or_theta = sigma;
      t.values = std::move(b.values);
      t.cancellation_report = std::move(b.loss);
      return t;
    }
    digits = std::min(digits * 2, cap);
  }
}

CoefficientTable h_coefficients(const HParams& params, const Real& theta, long n_max,
                                const Ctx& ctx) {
  DomainInfo info = derive(params, ctx);
  HParams aug = augment(params, theta, info.eta);
  Complex sigma(theta + info.eta, Real::zero(theta.prec()));
  CoefficientTable v = v_coefficients(aug, sigma, n_max, ctx);
  mpfr_prec_t bits = Ctx::bits_for(v.digits_used);
  Real f(1, bits);
  for (long n = 2; n < v.size(); ++n) {
    f *= n;
    v.values[static_cast<size_t>(n)] *= f;
  }
  v.kind = CoefficientTable::Kind::h;
  v.sigma_or_theta = Complex(theta, Real::zero(theta.prec()));
  return v;
}

}  // namespace foxh
