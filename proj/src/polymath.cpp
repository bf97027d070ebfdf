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

#include "foxh/polymath.hpp"

#include <gmp.h>

#include <cmath>
#include <deque>
#include <map>
#include <mutex>

namespace foxh {

namespace {

struct Mpz {
  mpz_t v;
  Mpz() { mpz_init(v); }
  ~Mpz() { mpz_clear(v); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

// Tangent numbers T_1, T_2, ... via the integer triangle; exact, append-only.
class TangentTable {
 public:
  // mpz value of T_j (1-based).
  void ensure(size_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    if (n <= t_.size()) return;
    size_t target = std::max(n, t_.size() + t_.size() / 2 + 8);
    rebuild(target);
  }

  void get(size_t j, mpz_t out) {
    ensure(j);
    std::lock_guard<std::mutex> lock(mu_);
    mpz_set(out, t_[j - 1].v);
  }

 private:
  void rebuild(size_t n) {
    std::deque<Mpz> t(n);
    mpz_set_ui(t[0].v, 1);
    for (size_t k = 2; k <= n; ++k) mpz_mul_ui(t[k - 1].v, t[k - 2].v, k - 1);
    Mpz tmp;
    for (size_t row = 2; row <= n; ++row) {
      for (size_t k = row; k <= n; ++k) {
        // t[k] = (k-row)*t[k-1] + (k-row+2)*t[k]
        mpz_mul_ui(tmp.v, t[k - 2].v, k - row);
        mpz_addmul_ui(tmp.v, t[k - 1].v, k - row + 2);
        mpz_swap(t[k - 1].v, tmp.v);
      }
    }
    t_.swap(t);
  }

  std::mutex mu_;
  std::deque<Mpz> t_;
};

TangentTable& tangent_table() {
  static TangentTable table;
  return table;
}

Real bernoulli_even_impl(long j, mpfr_prec_t bits) {
  if (j == 0) return Real(1, bits);
  Mpz t;
  tangent_table().get(static_cast<size_t>(j), t.v);
  // B_{2j} = (-1)^{j-1} T_j * 2j / (2^{2j} (2^{2j} - 1))
  Real b(bits + 16);
  mpfr_set_z(b.raw(), t.v, MPFR_RNDN);
  b *= 2 * j;
  Mpz den;
  mpz_set_ui(den.v, 1);
  mpz_mul_2exp(den.v, den.v, static_cast<mp_bitcnt_t>(2 * j));
  mpz_sub_ui(den.v, den.v, 1);
  mpz_mul_2exp(den.v, den.v, static_cast<mp_bitcnt_t>(2 * j));
  Real d(bits + 16);
  mpfr_set_z(d.raw(), den.v, MPFR_RNDN);
  b /= d;
  if (j % 2 == 0) b = -b;
  Real out(bits);
  mpfr_set(out.raw(), b.raw(), MPFR_RNDN);
  return out;
}

// Stirling-series coefficients B_{2j} / ((2j)(2j-1)), j >= 1, per precision.
class StirlingCache {
 public:
  std::shared_ptr<const std::vector<Real>> get(mpfr_prec_t bits, size_t count) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[bits];
    if (!slot || slot->size() < count) {
      size_t target = std::max(count, slot ? slot->size() * 2 : count);
      auto fresh = std::make_shared<std::vector<Real>>();
      fresh->reserve(target);
      for (size_t j = 1; j <= target; ++j) {
        Real c = bernoulli_even_impl(static_cast<long>(j), bits);
        c /= static_cast<long>(2 * j);
        c /= static_cast<long>(2 * j - 1);
        fresh->push_back(c);
      }
      slot = fresh;
    }
    return slot;
  }

 private:
  std::mutex mu_;
  std::map<mpfr_prec_t, std::shared_ptr<const std::vector<Real>>> cache_;
};

StirlingCache& stirling_cache() {
  static StirlingCache cache;
  return cache;
}

// Magnitude exponent (base 2) of a complex value, for cheap tail tests.
mpfr_exp_t exp2_of(const Complex& z) {
  mpfr_exp_t er = z.re.is_zero() || !z.re.is_finite() ? MPFR_EMIN_MIN : mpfr_get_exp(z.re.raw());
  mpfr_exp_t ei = z.im.is_zero() || !z.im.is_finite() ? MPFR_EMIN_MIN : mpfr_get_exp(z.im.raw());
  return er > ei ? er : ei;
}

Complex stirling_series(const Complex& w, mpfr_prec_t bits) {
  // (w - 1/2) log w - w + log(2pi)/2 + sum_j c_j w^{1-2j}
  Complex lw = log(w);
  Complex acc = (w - Real(0.5, bits)) * lw - w;
  Real half_l2pi = Real::log_2pi(bits);
  half_l2pi /= 2;
  acc += half_l2pi;

  Complex u = Complex::one(bits) / w;
  Complex u2 = u * u;
  Complex p = u;
  mpfr_exp_t cutoff = exp2_of(w) - static_cast<mpfr_exp_t>(bits) - 8;
  size_t have = static_cast<size_t>(0.22 * static_cast<double>(bits)) + 24;
  auto coeffs = stirling_cache().get(bits, have);
  for (size_t j = 1;; ++j) {
    if (j > coeffs->size()) coeffs = stirling_cache().get(bits, coeffs->size() * 2);
    Complex term = p * (*coeffs)[j - 1];
    acc += term;
    if (exp2_of(term) <= cutoff) break;
    p *= u2;
  }
  return acc;
}

// Shifted-argument distance guaranteeing Stirling reaches ~`bits` accuracy.
double stirling_wmin(mpfr_prec_t bits) {
  return 0.17 * static_cast<double>(bits) + 8.0;
}

Complex log_gamma_upper(const Complex& z, mpfr_prec_t bits);

// Reflection step for Re(z) < 1/2, Im(z) >= 0.
Complex log_gamma_reflect(const Complex& z, mpfr_prec_t bits) {
  Complex one_minus = Complex(1, bits) - z;  // Im <= 0
  Complex lg = one_minus.im.is_zero() ? log_gamma_upper(one_minus, bits)
                                      : log_gamma_upper(one_minus.conj(), bits).conj();
  Real lpi = log(Real::pi(bits));
  return Complex(lpi, Real::zero(bits)) - log_sin_pi(z, bits) - lg;
}

// Im(z) >= 0 and z not near a pole.
Complex log_gamma_upper(const Complex& z, mpfr_prec_t bits) {
  if (z.im.is_zero()) {
    // Real argument: mpfr does the work; the imaginary part of the
    // continuation from above is -pi * ceil(-x) for x < 0.
    int sign = 0;
    Real lg = lgamma_abs(z.re, &sign);
    Real imag = Real::zero(bits);
    if (z.re.sign() < 0) {
      Real mx = -z.re;
      Real c = floor(mx);
      if (c != mx) c += 1;
      imag = -Real::pi(bits) * c;
    }
    return Complex(lg, imag);
  }
  if (z.re < Real(0.5, bits)) return log_gamma_reflect(z, bits);

  double wmin = stirling_wmin(bits);
  double zr = z.re.to_double(), zi = z.im.to_double();
  long shift = 0;
  if (zr * zr + zi * zi < wmin * wmin) {
    double need = std::sqrt(std::max(0.0, wmin * wmin - zi * zi)) - zr;
    shift = need > 0 ? static_cast<long>(std::ceil(need)) : 0;
  }
  Complex w = z + shift;
  Complex st = stirling_series(w, bits);
  if (shift == 0) return st;

  // log of the rising product z (z+1) ... (z+shift-1), winding recovered from
  // a double-precision running sum of factor arguments.
  Complex prod = z;
  double arg_sum = std::atan2(zi, zr);
  Complex f(bits);
  for (long k = 1; k < shift; ++k) {
    f = z + k;
    arg_sum += std::atan2(f.im.to_double(), f.re.to_double());
    prod *= f;
  }
  Complex lp = log(prod);
  double two_pi = 6.283185307179586;
  double k_wind = std::round((arg_sum - lp.im.to_double()) / two_pi);
  if (k_wind != 0.0) {
    Real twopi = Real::pi(bits);
    twopi *= 2;
    lp.im += twopi * static_cast<long>(k_wind);
  }
  return st - lp;
}

}  // namespace

Real factorial(long n, mpfr_prec_t bits) {
  Real f(1, bits);
  mpfr_fac_ui(f.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
  return f;
}

Real bernoulli_even(long j, mpfr_prec_t bits) {
  if (j < 0) raise(errc::invalid_argument, "bernoulli_even: negative index");
  return bernoulli_even_impl(j, bits);
}

bool near_nonpositive_integer(const Complex& z, double tol, long* which) {
  if (!z.is_finite()) return false;
  double re = z.re.to_double();
  if (re > 0.5) return false;
  Real n = round_nearest(z.re);
  if (n.sign() > 0) return false;
  Real scale = max(Real(1.0, z.prec()), abs(z.re));
  Real lim = scale * Real(tol, z.prec());
  if (abs(z.re - n) > lim || abs(z.im) > lim) return false;
  if (which) *which = n.to_long();
  return true;
}

Complex log_sin_pi(const Complex& z, mpfr_prec_t bits) {
  // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}); the logarithm below is
  // analytic for Im(z) > 0 and matches log sin(pi/2) = 0 at z = 1/2.
  Real pi = Real::pi(bits);
  Real m = round_nearest(z.re);
  Complex zr(z.re - m, z.im);  // exact reduction: e^{2 pi i z} is 1-periodic
  Complex two_pi_i_z(-2 * pi * zr.im, 2 * pi * zr.re);
  Complex e = exp(two_pi_i_z);
  Complex log1me = log(Complex(1, bits) - e);
  // log(i/2) = -log 2 + i pi/2
  Real l2(2, bits);
  mpfr_log(l2.raw(), l2.raw(), MPFR_RNDN);
  Complex out(-l2 + pi * z.im, pi / 2 - pi * z.re);
  return out + log1me;
}

Complex log_gamma_bits(const Complex& z, mpfr_prec_t bits, double pole_tol) {
  if (!z.is_finite()) raise(errc::non_finite, "log_gamma of non-finite argument");
  if (near_nonpositive_integer(z, pole_tol))
    raise(errc::pole_of_gamma, "log_gamma at non-positive integer");
  Complex zw(bits);
  mpfr_set(zw.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(zw.im.raw(), z.im.raw(), MPFR_RNDN);
  if (zw.im.sign() < 0) return log_gamma_upper(zw.conj(), bits).conj();
  return log_gamma_upper(zw, bits);
}

Complex log_gamma(const Complex& z, const Ctx& ctx) {
  return log_gamma_bits(z, ctx.bits(), ctx.pole_merge_tol);
}

Complex pochhammer(const Complex& z, long n) {
  if (n < 0) raise(errc::invalid_argument, "pochhammer: negative length");
  Complex acc = Complex::one(z.prec());
  for (long k = 0; k < n; ++k) acc *= (z + k);
  return acc;
}

// ---------------------------------------------------------------------------
// Norlund kernel and rows
// ---------------------------------------------------------------------------

namespace {

class LogKernelCache {
 public:
  std::shared_ptr<const std::vector<Real>> get(mpfr_prec_t bits, size_t count) {
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[bits];
    if (!slot || slot->size() < count) {
      size_t target = std::max(count, slot ? slot->size() * 2 : count);
      slot = std::make_shared<std::vector<Real>>(build(bits, target));
    }
    return slot;
  }

 private:
  static std::vector<Real> build(mpfr_prec_t bits, size_t n) {
    // A(t) = (e^t - 1)/t = sum_k t^k / (k+1)!,  L = log(t/(e^t-1)) = -log A.
    std::vector<Real> a;
    a.reserve(n + 1);
    Real ak(1, bits);
    a.push_back(ak);
    for (size_t k = 1; k <= n; ++k) {
      ak /= static_cast<long>(k + 1);
      a.push_back(ak);
    }
    // D = A'/A:  D_k = (k+1) A_{k+1} - sum_{j=1..k} A_j D_{k-j}
    std::vector<Real> d;
    d.reserve(n);
    for (size_t k = 0; k + 1 <= n; ++k) {
      Real dk = a[k + 1] * static_cast<long>(k + 1);
      for (size_t j = 1; j <= k; ++j) fms_acc(dk, a[j], d[k - j]);
      d.push_back(dk);
    }
    // L_0 = 0, L_k = -D_{k-1}/k
    std::vector<Real> l;
    l.reserve(n);
    l.push_back(Real::zero(bits));
    for (size_t k = 1; k < n; ++k) l.push_back(-(d[k - 1] / static_cast<long>(k)));
    return l;
  }

  std::mutex mu_;
  std::map<mpfr_prec_t, std::shared_ptr<const std::vector<Real>>> cache_;
};

LogKernelCache& log_kernel_cache() {
  static LogKernelCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const std::vector<Real>> norlund_log_kernel(mpfr_prec_t bits, size_t count) {
  return log_kernel_cache().get(bits, count);
}

template <class T>
std::vector<T> norlund_row_tpl(const T& order, long k_max, const T& x, mpfr_prec_t bits) {
  if (k_max < 0) raise(errc::invalid_argument, "norlund row: negative k_max");
  size_t n = static_cast<size_t>(k_max);
  auto lptr = norlund_log_kernel(bits, n + 1);
  const std::vector<Real>& l = *lptr;

  // g = order*L + x t, exponentiated via f_k = (1/k) sum_j (j g_j) f_{k-j}.
  std::vector<T> jg;
  jg.reserve(n + 1);
  jg.push_back(scalar_zero<T>(bits));
  for (size_t j = 1; j <= n; ++j) {
    T v = order * l[j];
    if (j == 1) v += x;
    v *= static_cast<long>(j);
    jg.push_back(v);
  }
  std::vector<T> f;
  f.reserve(n + 1);
  T one = scalar_zero<T>(bits);
  one += Real(1, bits);
  f.push_back(one);
  for (size_t k = 1; k <= n; ++k) {
    T acc = scalar_zero<T>(bits);
    for (size_t j = 1; j <= k; ++j) acc_mul(acc, jg[j], f[k - j]);
    acc /= static_cast<long>(k);
    f.push_back(acc);
  }
  // B_k = k! f_k
  Real kf(1, bits);
  for (size_t k = 2; k <= n; ++k) {
    kf *= static_cast<long>(k);
    f[k] *= kf;
  }
  return f;
}

template std::vector<Real> norlund_row_tpl<Real>(const Real&, long, const Real&, mpfr_prec_t);
template std::vector<Complex> norlund_row_tpl<Complex>(const Complex&, long, const Complex&, mpfr_prec_t);

PolySeries norlund_kernel(const Complex& order, long k_max, const Ctx& ctx) {
  PolySeries ps;
  ps.order = order;
  ps.coefficients = norlund_row_tpl<Complex>(order, k_max, Complex::zero(ctx.bits()), ctx.bits());
  // undo the k! scaling: the kernel stores plain series coefficients
  Real kf(1, ctx.bits());
  for (size_t k = 2; k < ps.coefficients.size(); ++k) {
    kf *= static_cast<long>(k);
    ps.coefficients[k] /= kf;
  }
  return ps;
}

Complex bernoulli_norlund(const Complex& order, long k, const Complex& x, const Ctx& ctx) {
  if (k < 0) raise(errc::invalid_argument, "bernoulli_norlund: negative index");
  mpfr_prec_t bits = ctx.bits();
  PolySeries kern = norlund_kernel(order, k, ctx);
  // B_k = k! sum_j kern_j x^{k-j}/(k-j)!
  std::vector<Complex> xp;
  xp.reserve(static_cast<size_t>(k) + 1);
  Complex p = Complex::one(bits);
  xp.push_back(p);
  for (long m = 1; m <= k; ++m) {
    p = p * x;
    p /= m;
    xp.push_back(p);
  }
  Complex acc = Complex::zero(bits);
  for (long j = 0; j <= k; ++j) cfma(acc, kern.coefficients[static_cast<size_t>(j)], xp[static_cast<size_t>(k - j)]);
  acc *= factorial(k, bits);
  return acc;
}

std::vector<Complex> bernoulli_norlund_row(long order, long k_max, const Complex& x, const Ctx& ctx) {
  if (order < 1) raise(errc::invalid_argument, "bernoulli_norlund_row: order must be positive");
  return norlund_row_tpl<Complex>(Complex(order, ctx.bits()), k_max, x, ctx.bits());
}

}  // namespace foxh
