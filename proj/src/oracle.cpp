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

#include "foxh/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace foxh {

namespace {

// log|Gamma(x)| plus sign for real x, full log_gamma for complex arguments.
struct GammaAccum {
  Real log_abs;
  Real imag;
  int sign = 1;
  bool real_mode = true;

  explicit GammaAccum(mpfr_prec_t bits) : log_abs(bits), imag(bits) {}

  void add(const Complex& arg, mpfr_prec_t bits, double tol, int dir) {
    if (arg.im.is_zero()) {
      int s = 0;
      Real la = lgamma_abs(arg.re, &s);
      if (dir > 0) {
        log_abs += la;
        sign *= s;
      } else {
        log_abs -= la;
        sign *= s;
      }
      return;
    }
    real_mode = false;
    Complex g = log_gamma_bits(arg, bits, tol);
    if (dir > 0) {
      log_abs += g.re;
      imag += g.im;
    } else {
      log_abs -= g.re;
      imag -= g.im;
    }
  }

  Complex value(mpfr_prec_t bits) const {
    if (real_mode) {
      Real m = foxh::exp(log_abs);
      if (sign < 0) m = -m;
      return Complex(m, Real::zero(bits));
    }
    return foxh::exp(Complex(log_abs, imag));
  }
};

}  // namespace

SeriesValue residue_series(const HParams& params, const Complex& z, long nu_max, const Ctx& ctx) {
  DomainInfo info = derive(params, ctx);
  mpfr_prec_t bits = ctx.bits();
  double tol = ctx.pole_merge_tol;

  if (z.is_zero()) {
    // Every residue carries a positive power of z when Re(b_j/beta_j) > 0.
    for (const auto& f : params.lower)
      if (!((f.shift / f.scale).re.sign() > 0))
        raise(errc::branch_cut, "z = 0 needs min Re(b_j/beta_j) > 0");
    SeriesValue sv;
    sv.value = Complex::zero(bits);
    sv.terms_used = 1;
    sv.trunc_estimate = Real::zero(bits);
    sv.converged = true;
    return sv;
  }
  if (z.im.is_zero() && z.re.sign() < 0) raise(errc::branch_cut, "z on the cut (-inf, 0]");
  Real r = abs(z);
  if (!(r < info.rho * Real(0.98, bits)))
    raise(errc::too_close_to_boundary, "|z| must stay below 0.98 rho");

  PoleSet ps = pole_set(params, Complex::zero(bits), nu_max, ctx);
  for (const auto& rec : ps.records)
    if (rec.multiplicity > 1)
      raise(errc::non_simple_poles, "coincident integrand poles; residue oracle needs simple poles");

  Complex lz = log(z);
  Complex acc = Complex::zero(bits);
  Real tail_sum = Real::zero(bits);
  long terms_total = 0;
  // stop a channel once this many consecutive terms sit below target
  const int consec_needed = 3;
  Real target_factor = pow(Real(10, bits), -(ctx.digits + 5));

  for (size_t j = 0; j < params.q(); ++j) {
    const Real& beta_j = params.lower[j].scale;
    const Complex& b_j = params.lower[j].shift;
    Complex step_log = lz / beta_j;
    Complex pw = exp(lz * (b_j / beta_j));  // z^{(b_j+nu)/beta_j}, iterated
    Complex step = exp(step_log);
    Real inv_fac(1, bits);  // 1/nu!
    int consec = 0;
    Real last_mag = Real::zero(bits);

    for (long nu = 0; nu <= nu_max; ++nu) {
      if (nu > 0) {
        pw *= step;
        inv_fac /= nu;
      }
      // pole location s = -(b_j+nu)/beta_j; gamma arguments at that s
      bool zero_term = false;
      GammaAccum ga(bits);
      Complex s_here = (b_j + nu) / beta_j;
      for (size_t k = 0; k < params.q(); ++k) {
        if (k == j) continue;
        Complex arg = params.lower[k].shift - params.lower[k].scale * s_here;
        if (near_nonpositive_integer(arg, tol)) {
          // a second numerator pole here: not simple after all
          raise(errc::non_simple_poles, "numerator gamma pole inside residue evaluation");
        }
        ga.add(arg, bits, tol, +1);
      }
      for (size_t i = 0; i < params.p(); ++i) {
        Complex arg = params.upper[i].shift - params.upper[i].scale * s_here;
        if (near_nonpositive_integer(arg, tol)) {
          zero_term = true;  // 1/Gamma vanishes
          break;
        }
        ga.add(arg, bits, tol, -1);
      }

      Real mag(bits);
      if (!zero_term) {
        Complex term = ga.value(bits) * pw;
        term *= inv_fac;
        term /= beta_j;
        if (nu % 2 != 0) term = -term;
        acc += term;
        mag = abs(term);
      }
      last_mag = mag;
      ++terms_total;

      Real scale = max(abs(acc), Real(1e-300, bits));
      if (mag <= target_factor * scale) {
        if (++consec >= consec_needed && nu >= 4) break;
      } else {
        consec = 0;
      }
    }
    tail_sum += last_mag;
  }

  SeriesValue sv;
  sv.value = std::move(acc);
  sv.terms_used = terms_total;
  sv.trunc_estimate = tail_sum * 10;
  sv.converged = sv.trunc_estimate <= pow(Real(10, bits), -(ctx.digits / 2)) * abs(sv.value);
  return sv;
}

Complex closed_form(ClosedFamily family, const Complex& a, const Complex& b, const Complex& t,
                    const Ctx& ctx) {
  mpfr_prec_t bits = ctx.bits();
  if (t.im.is_zero() && t.re.sign() <= 0) raise(errc::branch_cut, "t on the cut (-inf, 0]");
  if (family == ClosedFamily::beta_ratio) {
    Complex d = a - b;
    if (!d.im.is_zero()) raise(errc::invalid_family_params, "beta_ratio needs a - b real");
    Real dr = round_nearest(d.re);
    if (abs(d.re - dr) > Real(ctx.integer_tol, bits) || dr < 1)
      raise(errc::invalid_family_params, "beta_ratio needs a - b integer >= 1");
    long eta = dr.to_long();
    Complex tb = pow(t, b);
    Complex omt = Complex(1, bits) - t;
    return tb * pow_int(omt, eta - 1) / factorial(eta - 1, bits);
  }
  if (!b.im.is_zero()) raise(errc::invalid_family_params, "duplication needs real b");
  if (!(a - (b * 2 + 1)).is_zero()) {
    Complex gap = a - b * 2 - Real(1, bits);
    if (abs(gap) > Real(ctx.integer_tol, bits))
      raise(errc::invalid_family_params, "duplication needs a = 2b + 1");
  }
  // 2^{1-2b} sqrt(pi) t^{2b}
  Real two(2, bits);
  Real coeff = pow(two, 1 - 2 * b.re) * sqrt(Real::pi(bits));
  return pow(t, b * 2) * coeff;
}

std::optional<FamilyMatch> detect_family(const HParams& params, const Ctx& ctx) {
  mpfr_prec_t bits = ctx.bits();
  Real tol(ctx.integer_tol, bits);
  auto near = [&](const Real& x, double v) { return abs(x - Real(v, bits)) <= tol; };

  if (params.p() == 1 && params.q() == 1 && near(params.upper[0].scale, 1.0) &&
      near(params.lower[0].scale, 1.0)) {
    Complex d = params.upper[0].shift - params.lower[0].shift;
    if (d.im.is_zero()) {
      Real dr = round_nearest(d.re);
      if (abs(d.re - dr) <= tol && dr >= 1)
        return FamilyMatch{ClosedFamily::beta_ratio, params.upper[0].shift, params.lower[0].shift};
    }
  }
  if (params.p() == 1 && params.q() == 2 && near(params.upper[0].scale, 1.0) &&
      near(params.lower[0].scale, 0.5) && near(params.lower[1].scale, 0.5) &&
      params.shifts_real()) {
    const Complex& b0 = params.lower[0].shift;
    const Complex& b1 = params.lower[1].shift;
    const Complex& a0 = params.upper[0].shift;
    auto pick = [&](const Complex& lo, const Complex& hi) -> std::optional<FamilyMatch> {
      if (abs(hi.re - lo.re - Real(0.5, bits)) <= tol &&
          abs(a0.re - 2 * lo.re - Real(1, bits)) <= tol)
        return FamilyMatch{ClosedFamily::duplication, a0, lo};
      return std::nullopt;
    };
    if (auto m = pick(b0, b1)) return m;
    if (auto m = pick(b1, b0)) return m;
  }
  return std::nullopt;
}

ComparisonReport compare(const HParams& params, const Real& theta,
                         const std::vector<Complex>& t_grid, long n_max, long nu_max,
                         const Ctx& ctx) {
  mpfr_prec_t bits = ctx.bits();
  ComparisonReport rep;
  rep.max_rel_err = Real::zero(bits);
  if (t_grid.empty()) return rep;

  DomainInfo info = derive(params, ctx);
  CoefficientTable h = h_coefficients(params, theta, n_max, ctx);
  std::optional<FamilyMatch> fam = detect_family(params, ctx);
  Real tiny = pow(Real(10, bits), -3 * ctx.digits);

  for (const Complex& t : t_grid) {
    SeriesValue e = eval_H_general_with(h, info, theta, t, ctx);
    Complex o(bits);
    if (fam) {
      o = closed_form(fam->family, fam->a, fam->b, t, ctx);
    } else {
      o = residue_series(params, t * info.rho, nu_max, ctx).value;
    }
    Real ae = abs(e.value - o);
    Real denom = max(abs(o), tiny);
    Real re_err = ae / denom;
    rep.max_rel_err = max(rep.max_rel_err, re_err);
    rep.grid.push_back(t);
    rep.expansion_values.push_back(e.value);
    rep.oracle_values.push_back(o);
    rep.abs_err.push_back(std::move(ae));
    rep.rel_err.push_back(std::move(re_err));
    rep.terms_used.push_back(e.terms_used);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Family generator
// ---------------------------------------------------------------------------

namespace {

struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  long pick(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
};

}  // namespace

std::vector<HParams> draw_test_families(int count, std::uint64_t seed, const Ctx& ctx) {
  // scales in twelfths: {1/4, 1/3, 1/2, 2/3, 1, 3/2}
  static const long kTwelfths[] = {3, 4, 6, 8, 12, 18};
  mpfr_prec_t bits = ctx.parse_bits();
  SplitMix64 rng(seed);
  std::vector<HParams> out;
  out.reserve(static_cast<size_t>(count));

  while (out.size() < static_cast<size_t>(count)) {
    long p = 1 + rng.pick(3);
    long q = 1 + rng.pick(3);
    std::vector<long> tw_low, tw_up;
    long sum_low = 0, sum_up = 0;
    for (long j = 0; j < q; ++j) {
      long t = kTwelfths[rng.pick(6)];
      tw_low.push_back(t);
      sum_low += t;
    }
    for (long i = 1; i < p; ++i) {
      long t = kTwelfths[rng.pick(6)];
      tw_up.push_back(t);
      sum_up += t;
    }
    long first_up = sum_low - sum_up;  // forces equal scale sums
    if (first_up < 3 || first_up > 36) continue;
    tw_up.insert(tw_up.begin(), first_up);

    std::vector<double> b(static_cast<size_t>(q));
    for (auto& v : b) v = 0.2 + 1.3 * rng.uniform();
    std::vector<double> a(static_cast<size_t>(p));
    for (long i = 1; i < p; ++i) a[static_cast<size_t>(i)] = 0.4 + 1.2 * rng.uniform();

    // separation checks on the residue poles -(b_j+nu)/beta_j
    bool ok = true;
    std::vector<double> poles;
    for (long j = 0; j < q && ok; ++j) {
      double beta = static_cast<double>(tw_low[static_cast<size_t>(j)]) / 12.0;
      for (long nu = 0; nu <= 64; ++nu) {
        double s = -(b[static_cast<size_t>(j)] + nu) / beta;
        if (s < -80.0) break;
        if (std::abs(s - std::round(s)) < 0.05) {
          ok = false;
          break;
        }
        poles.push_back(s);
      }
    }
    if (ok) {
      std::sort(poles.begin(), poles.end());
      for (size_t i = 1; i < poles.size(); ++i)
        if (poles[i] - poles[i - 1] < 0.05) {
          ok = false;
          break;
        }
    }
    if (ok) {
      // denominator gamma zeros must stay clear of the kept poles, or the
      // leading pole (hence the abscissa) would be cancelled
      double a0d = 1.0 - static_cast<double>(q - p) / 2.0;
      for (long j = 0; j < q; ++j) a0d += b[static_cast<size_t>(j)];
      for (long i = 1; i < p; ++i) a0d -= a[static_cast<size_t>(i)];
      std::vector<double> ad(a.begin(), a.end());
      ad[0] = a0d;
      for (long i = 0; i < p && ok; ++i) {
        double alpha = static_cast<double>(tw_up[static_cast<size_t>(i)]) / 12.0;
        for (long nu = 0; nu <= 256; ++nu) {
          double s = -(ad[static_cast<size_t>(i)] + nu) / alpha;
          if (s < -82.0) break;
          auto it = std::lower_bound(poles.begin(), poles.end(), s - 0.02);
          if (it != poles.end() && *it < s + 0.02) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;

    HParams fam;
    Real twelve(12, bits);
    for (long j = 0; j < q; ++j)
      fam.lower.emplace_back(Real(tw_low[static_cast<size_t>(j)], bits) / twelve,
                             Complex(Real(b[static_cast<size_t>(j)], bits), Real::zero(bits)));
    // solve the first upper shift so eta = sum a - sum b + (q-p)/2 = 1
    Real a0 = Real(1, bits) - Real(q - p, bits) / 2;
    for (long j = 0; j < q; ++j) a0 += Real(b[static_cast<size_t>(j)], bits);
    for (long i = 1; i < p; ++i) a0 -= Real(a[static_cast<size_t>(i)], bits);
    fam.upper.emplace_back(Real(first_up, bits) / twelve, Complex(a0, Real::zero(bits)));
    for (long i = 1; i < p; ++i)
      fam.upper.emplace_back(Real(tw_up[static_cast<size_t>(i)], bits) / twelve,
                             Complex(Real(a[static_cast<size_t>(i)], bits), Real::zero(bits)));

    // keep denominator zeros away from the kept poles
    bool clean = true;
    try {
      DomainInfo info = derive(fam, ctx);
      if (info.eta != 1) clean = false;
    } catch (const Error&) {
      clean = false;
    }
    if (!clean) continue;
    out.push_back(std::move(fam));
  }
  return out;
}

}  // namespace foxh
