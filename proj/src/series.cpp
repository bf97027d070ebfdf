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

#include "foxh/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace foxh {

namespace {

void check_off_cut(const Complex& t) {
  if (!t.is_finite()) raise(errc::non_finite, "evaluation point is not finite");
  if (t.im.is_zero() && t.re.sign() <= 0)
    raise(errc::branch_cut, "t lies on the cut (-inf, 0]");
}

Real convergence_threshold(const Ctx& ctx, mpfr_prec_t bits) {
  Real thr(10, bits);
  return pow(thr, -(ctx.digits / 2));
}

// sum_{n>=n0} h_n / Gamma(eta+n) * u^{n+eta-1} with n0 = max(0, 1-eta);
// the (1-t)^{eta-1} factor is folded in so eta <= 0 needs no pole handling.
struct HSum {
  Complex acc;
  Real last_mag;
  long terms = 0;
};

HSum sum_h_series(const CoefficientTable& h, long eta, const Complex& u, mpfr_prec_t bits) {
  long n0 = std::max(0L, 1 - eta);
  if (h.size() <= n0)
    raise(errc::invalid_argument,
          "series table too short: need n_max >= " + std::to_string(n0) + " for eta = " +
              std::to_string(eta));
  long start_pow = n0 + eta - 1;  // >= 0 always
  HSum out{Complex::zero(bits), Real::zero(bits), 0};
  Complex pw = pow_int(u, start_pow);
  if (u.is_zero()) pw = start_pow == 0 ? Complex::one(bits) : Complex::zero(bits);
  // Gamma(eta+n) over integers, iterated upward from Gamma(eta+n0) = (eta+n0-1)!
  Real gam = factorial(eta + n0 - 1, bits);
  long n_max = h.size() - 1;
  for (long n = n0; n <= n_max; ++n) {
    Complex term = h.values[static_cast<size_t>(n)] * pw;
    term /= gam;
    out.acc += term;
    out.last_mag = abs(term);
    ++out.terms;
    pw *= u;
    gam *= (eta + n);
  }
  return out;
}

SeriesValue finish(Complex value, long terms, Real last_mag, const Ctx& ctx, mpfr_prec_t bits) {
  SeriesValue sv;
  sv.value = std::move(value);
  sv.terms_used = terms;
  sv.trunc_estimate = last_mag * 10;
  sv.converged = sv.trunc_estimate <= convergence_threshold(ctx, bits) * abs(sv.value);
  return sv;
}

}  // namespace

SeriesValue eval_phi_with(const CoefficientTable& v_table, const DomainInfo& info,
                          const Complex& t, const Ctx& ctx) {
  mpfr_prec_t bits = ctx.bits();
  check_off_cut(t);
  Complex u = Complex(1, bits) - t;
  if (!(abs(u) < info.radius))
    raise(errc::outside_disk, "|1-t| = " + abs(u).str(6) + " outside radius " + info.radius.str(6));
  Complex acc = Complex::zero(bits);
  Complex pw = Complex::one(bits);
  Real last(bits);
  long n_max = v_table.size() - 1;
  for (long n = 0; n <= n_max; ++n) {
    Complex term = v_table.values[static_cast<size_t>(n)] * pw;
    acc += term;
    last = abs(term);
    pw *= u;
  }
  return finish(std::move(acc), n_max + 1, std::move(last), ctx, bits);
}

SeriesValue eval_phi(const HParams& params, const Complex& sigma, const Complex& t, long n_max,
                     const Ctx& ctx) {
  DomainInfo info = derive(params, ctx);
  if (info.eta != 1) raise(errc::eta_not_one, "phi expansion requires eta = 1");
  CoefficientTable v = v_coefficients(params, sigma, n_max, ctx);
  return eval_phi_with(v, info, t, ctx);
}

SeriesValue eval_H_general_with(const CoefficientTable& h_table, const DomainInfo& info,
                                const Real& theta, const Complex& t, const Ctx& ctx) {
  mpfr_prec_t bits = ctx.bits();
  check_off_cut(t);
  Complex u = Complex(1, bits) - t;
  if (!(abs(u) < info.radius))
    raise(errc::outside_disk, "|1-t| = " + abs(u).str(6) + " outside radius " + info.radius.str(6));
  HSum s = sum_h_series(h_table, info.eta, u, bits);
  Complex tpow = t.is_real() && t.re.sign() > 0
                     ? Complex(pow(t.re, theta + 1), Real::zero(bits))
                     : exp(log(t) * (theta + 1));
  Real scale = abs(tpow);
  return finish(tpow * s.acc, s.terms, s.last_mag * scale, ctx, bits);
}

SeriesValue eval_H_general(const HParams& params, const Real& theta, const Complex& t, long n_max,
                           const Ctx& ctx) {
  DomainInfo info = derive(params, ctx);
  CoefficientTable h = h_coefficients(params, theta, n_max, ctx);
  return eval_H_general_with(h, info, theta, t, ctx);
}

SeriesValue eval_H_omega(const HParams& params, const Real& theta, const Real& omega,
                         const Complex& t, long n_max, const Ctx& ctx) {
  mpfr_prec_t bits = ctx.bits();
  check_off_cut(t);
  HParams resc = rescale(params, omega);
  DomainInfo info = derive(resc, ctx);
  Complex lt = log(t);
  Complex u = exp(lt * omega);
  Complex omu = Complex(1, bits) - u;
  if (!(abs(omu) < info.radius))
    raise(errc::outside_domain,
          "|1-t^omega| = " + abs(omu).str(6) + " outside radius " + info.radius.str(6));
  CoefficientTable h = h_coefficients(resc, theta, n_max, ctx);
  HSum s = sum_h_series(h, info.eta, omu, bits);
  Complex tpow = exp(lt * (omega * (theta + 1)));
  tpow *= omega;
  Real scale = abs(tpow);
  return finish(tpow * s.acc, s.terms, s.last_mag * scale, ctx, bits);
}

// ---------------------------------------------------------------------------
// W evaluators
// ---------------------------------------------------------------------------

Complex eval_W_direct(const HParams& params, const Complex& z, const Ctx& ctx) {
  DomainInfo info = derive(params, ctx);
  mpfr_prec_t bits = ctx.bits();
  double tol = ctx.pole_merge_tol;

  struct NearPole {
    Complex arg;
    long n;       // nearest non-positive integer
    Real scale;   // d(arg)/dz, for coincident-pole limits
  };
  std::vector<NearPole> num_poles, den_poles;
  Complex lg = Complex::zero(bits);
  lg -= log(info.rho) * z;

  auto fold = [&](const std::vector<GammaFactor>& fs, bool numerator) {
    for (const auto& f : fs) {
      Complex a = z * f.scale + f.shift;
      long n = 0;
      if (near_nonpositive_integer(a, tol, &n)) {
        (numerator ? num_poles : den_poles).push_back({a, n, f.scale});
        continue;
      }
      Complex g = log_gamma_bits(a, bits, tol);
      if (numerator)
        lg += g;
      else
        lg -= g;
    }
  };
  fold(params.lower, true);
  fold(params.upper, false);

  if (num_poles.size() > den_poles.size())
    raise(errc::pole_of_w, "numerator gamma pole not cancelled at this z");
  if (den_poles.size() > num_poles.size()) return Complex::zero(bits);

  // Equal counts: the limit of Gamma(x)/Gamma(y) with x -> -N, y -> -M is
  // (-1)^{N-M} (M!/N!) (y+M)/(x+N); with both offsets at rounding level the
  // offset ratio degenerates to the ratio of the z-derivatives of the args.
  Real noise = pow(Real(2, bits), -static_cast<long>(bits / 2));
  for (size_t i = 0; i < num_poles.size(); ++i) {
    const NearPole& pn = num_poles[i];
    const NearPole& pd = den_poles[i];
    Complex off_n = pn.arg + Real(-pn.n, bits);
    Complex off_d = pd.arg + Real(-pd.n, bits);
    Complex ratio = (abs(off_n) <= noise && abs(off_d) <= noise)
                        ? Complex(pd.scale / pn.scale, Real::zero(bits))
                        : off_d / off_n;
    lg += log(ratio);
    lg.re += log(factorial(-pd.n, bits)) - log(factorial(-pn.n, bits));
    if ((pn.n - pd.n) % 2 != 0) lg.im += Real::pi(bits);
  }
  return exp(lg);
}

namespace {

struct FactorialSeriesEval {
  SeriesValue sv;
  std::vector<Complex> terms;
};

FactorialSeriesEval w_factorial_core(const CoefficientTable& h, const DomainInfo& info,
                                     const Real& theta, const Complex& z, const Ctx& ctx,
                                     const Real* lambda, bool keep_terms) {
  mpfr_prec_t bits = ctx.bits();
  double tol = ctx.pole_merge_tol;
  long eta = info.eta;
  Complex top = z + theta + Real(1, bits);
  Complex bottom = z + theta + Real(eta + 1, bits);
  if (near_nonpositive_integer(top, tol))
    raise(errc::pochhammer_pole, "Gamma(z+theta+1) pole");
  if (near_nonpositive_integer(bottom, tol))
    raise(errc::pochhammer_pole, "pochhammer factor vanishes along the sum");

  Complex g = exp(log_gamma_bits(top, bits, tol) - log_gamma_bits(bottom, bits, tol));
  FactorialSeriesEval out;
  Complex acc = Complex::zero(bits);
  Real last(bits);
  long n_max = h.size() - 1;
  if (keep_terms) out.terms.reserve(static_cast<size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) {
    Complex term = h.values[static_cast<size_t>(n)] * g;
    acc += term;
    last = abs(term);
    if (keep_terms) out.terms.push_back(term);
    Complex d = z + theta + Real(static_cast<double>(eta + n + 1), bits);
    g /= d;
  }
  out.sv = finish(std::move(acc), n_max + 1, std::move(last), ctx, bits);
  if (lambda && !(z.re > *lambda)) out.sv.converged = false;  // below the abscissa
  return out;
}

}  // namespace

SeriesValue eval_W_factorial_with(const CoefficientTable& h_table, const DomainInfo& info,
                                  const Real& theta, const Complex& z, const Ctx& ctx,
                                  const Real* lambda) {
  return w_factorial_core(h_table, info, theta, z, ctx, lambda, false).sv;
}

SeriesValue eval_W_factorial(const HParams& params, const Real& theta, const Complex& z,
                             long n_max, const Ctx& ctx) {
  DomainInfo info = derive(params, ctx);
  CoefficientTable h = h_coefficients(params, theta, n_max, ctx);
  HParams aug = augment(params, theta, info.eta);
  Complex sig(theta + info.eta, Real::zero(theta.prec()));
  Real lam = abscissa_unchecked(aug, sig, ctx);
  return w_factorial_core(h, info, theta, z, ctx, &lam, false).sv;
}

std::vector<Complex> w_factorial_terms(const HParams& params, const Real& theta, const Complex& z,
                                       long n_max, const Ctx& ctx) {
  DomainInfo info = derive(params, ctx);
  CoefficientTable h = h_coefficients(params, theta, n_max, ctx);
  return w_factorial_core(h, info, theta, z, ctx, nullptr, true).terms;
}

// ---------------------------------------------------------------------------
// Pole bookkeeping
// ---------------------------------------------------------------------------

PoleSet pole_set(const HParams& params, const Complex& sigma, long depth, const Ctx& ctx) {
  validate(params);
  if (depth < 0) raise(errc::invalid_argument, "pole_set: negative depth");
  mpfr_prec_t bits = ctx.bits();
  double tol = ctx.pole_merge_tol;

  struct Cand {
    Complex s;
    double re_d;
  };
  std::vector<Cand> cands;
  cands.reserve(params.q() * static_cast<size_t>(depth + 1));
  for (const auto& f : params.lower) {
    Complex base = sigma - f.shift / f.scale;
    Real step = 1 / f.scale;
    Complex s = base;
    for (long nu = 0; nu <= depth; ++nu) {
      cands.push_back({s, s.re.to_double()});
      s.re -= step;
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.re_d > b.re_d;
  });

  auto coincide = [&](const Complex& a, const Complex& b) {
    Real scale = max(Real(1, bits), max(abs(a), abs(b)));
    return abs(a - b) <= scale * Real(tol, bits);
  };

  // Cluster along descending real part.
  struct Cluster {
    Complex s;
    double re_d = 0;
    int count = 0;
  };
  std::vector<Cluster> clusters;
  for (const Cand& c : cands) {
    double lim = tol * std::max(1.0, std::abs(c.re_d)) * 4 + 1e-300;
    bool merged = false;
    for (auto it = clusters.rbegin(); it != clusters.rend(); ++it) {
      if (it->re_d - c.re_d > lim) break;  // sorted: earlier clusters are farther
      if (coincide(it->s, c.s)) {
        it->count += 1;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({c.s, c.re_d, 1});
  }

  // Denominator gamma poles cancel one order each where they coincide.
  double min_re = clusters.empty() ? 0.0 : clusters.back().re_d - 1.0;
  for (const auto& f : params.upper) {
    Complex base = sigma - f.shift / f.scale;
    Real step = 1 / f.scale;
    Complex s = base;
    long guard = 8 * (depth + 2);
    for (long nu = 0; nu <= guard && s.re.to_double() >= min_re; ++nu) {
      double sd = s.re.to_double();
      double lim = tol * std::max(1.0, std::abs(sd)) * 4 + 1e-300;
      for (auto& cl : clusters) {
        if (cl.count <= 0 || std::abs(cl.re_d - sd) > lim) continue;
        if (coincide(cl.s, s)) {
          cl.count -= 1;
          break;
        }
      }
      s.re -= step;
    }
  }

  PoleSet out;
  out.beta_hat = Real::inf(-1, bits);
  for (const Cluster& cl : clusters) {
    if (cl.count <= 0) continue;
    PoleRecord rec;
    rec.location = cl.s;
    rec.multiplicity = cl.count;
    rec.removable = cl.count == 1 && near_nonpositive_integer(cl.s, tol);
    if (!rec.removable) out.beta_hat = max(out.beta_hat, cl.s.re);
    out.records.push_back(std::move(rec));
  }
  return out;
}

Real abscissa_unchecked(const HParams& params, const Complex& sigma, const Ctx& ctx, long depth) {
  PoleSet ps = pole_set(params, sigma, depth, ctx);
  if (ps.beta_hat.is_inf()) return ps.beta_hat;
  return ps.beta_hat - sigma.re;
}

Real abscissa(const HParams& params, const Complex& sigma, const Ctx& ctx, long depth) {
  DomainInfo info = derive(params, ctx);
  if (info.eta != 1) raise(errc::eta_not_one, "abscissa requires eta = 1");
  Real third_pi = Real::pi(ctx.bits()) / 3;
  if (info.boundary_gamma || info.gamma1 < third_pi)
    raise(errc::boundary_gamma, "gamma1 <= pi/3: convergence abscissa not determined here");
  return abscissa_unchecked(params, sigma, ctx, depth);
}

// ---------------------------------------------------------------------------
// Order diagnostics
// ---------------------------------------------------------------------------

double order_estimate_seq(const std::vector<Complex>& values, long digits_used, long first_index) {
  long count = static_cast<long>(values.size());
  if (count < 50) raise(errc::invalid_argument, "order_estimate needs at least 50 entries");
  double max_log = -1e300;
  std::vector<double> logs(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const Complex& v = values[i];
    double l = -1e300;
    if (v.is_finite() && !(v.re.is_zero() && v.im.is_zero())) {
      Real m = abs(v);
      l = static_cast<double>(mpfr_get_exp(m.raw())) * 0.30102999566398120;
    }
    logs[i] = l;
    max_log = std::max(max_log, l);
  }
  double floor_log = max_log - (static_cast<double>(digits_used) - 5.0);

  long lo = count - count / 3;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long used = 0;
  for (long i = lo; i < count; ++i) {
    if (logs[static_cast<size_t>(i)] <= floor_log) continue;
    double n = static_cast<double>(i + first_index);
    if (n <= 0) continue;
    double x = std::log(n);
    Real m = abs(values[static_cast<size_t>(i)]) * Real(n, values[static_cast<size_t>(i)].prec());
    double y = std::log(m.to_double());
    if (!std::isfinite(y)) {
      // beyond double range: reconstruct from the exponent
      y = (static_cast<double>(mpfr_get_exp(m.raw())) - 0.5) * 0.6931471805599453;
    }
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 8) return -std::numeric_limits<double>::infinity();
  double denom = static_cast<double>(used) * sxx - sx * sx;
  double slope = (static_cast<double>(used) * sxy - sx * sy) / denom;
  return slope;
}

double order_estimate(const CoefficientTable& table) {
  long first = table.kind == CoefficientTable::Kind::q ? 1 : 0;
  return order_estimate_seq(table.values, table.digits_used, first);
}

}  // namespace foxh
