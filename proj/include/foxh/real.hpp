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

#ifndef FOXH_REAL_HPP_
#define FOXH_REAL_HPP_

#include <mpfr.h>

#include <string>
#include <utility>

namespace foxh {

// Arbitrary-precision real. Every value carries its own precision; binary
// operations produce results at the larger of the two operand precisions,
// rounded to nearest. No global or thread-local precision state is used, so
// results are reproducible regardless of evaluation order or thread count.
class Real {
 public:
  // Default-constructed values are 64-bit NaN; containers may create them,
  // code must not rely on them.
  Real() : Real(static_cast<mpfr_prec_t>(64)) { mpfr_set_nan(v_); }

  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }

  Real(long n, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, n, MPFR_RNDN);
  }

  Real(int n, mpfr_prec_t prec) : Real(static_cast<long>(n), prec) {}

  Real(double d, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }

  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  static Real zero(mpfr_prec_t prec) { return Real(prec); }
  static Real nan(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_nan(r.v_);
    return r;
  }
  static Real inf(int sign, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_inf(r.v_, sign);
    return r;
  }
  // Parses a decimal string ("0.3", "1e-8") or a rational "p/q".
  static Real parse(const std::string& text, mpfr_prec_t prec);
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real log_2pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  // Nearest integer as long (ties to even per mpfr_rint).
  long round_long() const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(v_));
    mpfr_rint(t, v_, MPFR_RNDN);
    long n = mpfr_get_si(t, MPFR_RNDN);
    mpfr_clear(t);
    return n;
  }

  // Scientific notation with `sig` significant digits; deterministic.
  std::string str(int sig) const;

  Real& operator+=(const Real& o) { return inplace2(o, mpfr_add); }
  Real& operator-=(const Real& o) { return inplace2(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return inplace2(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return inplace2(o, mpfr_div); }
  Real& operator+=(long n) {
    mpfr_add_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(long n) {
    mpfr_sub_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long n) {
    mpfr_mul_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long n) {
    mpfr_div_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }

  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }

  friend Real operator+(const Real& a, long n) {
    Real r(a);
    mpfr_add_si(r.v_, r.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long n) {
    Real r(a);
    mpfr_sub_si(r.v_, r.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long n) {
    Real r(a);
    mpfr_mul_si(r.v_, r.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long n) {
    Real r(a);
    mpfr_div_si(r.v_, r.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real operator+(long n, const Real& a) { return a + n; }
  friend Real operator*(long n, const Real& a) { return a * n; }
  friend Real operator-(long n, const Real& a) {
    Real r(a.prec());
    mpfr_si_sub(r.v_, n, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long n, const Real& a) {
    Real r(a.prec());
    mpfr_si_div(r.v_, n, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) < 0; }
  friend bool operator>(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) > 0; }
  friend bool operator<=(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) <= 0; }
  friend bool operator>=(const Real& a, long n) { return mpfr_cmp_si(a.v_, n) >= 0; }
  friend bool operator==(const Real& a, long n) { return a.is_nan() ? false : mpfr_cmp_si(a.v_, n) == 0; }

 private:
  using mpfr_bin_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  static Real bin(const Real& a, const Real& b, mpfr_bin_fn fn) {
    Real r(a.prec() >= b.prec() ? a.prec() : b.prec());
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  Real& inplace2(const Real& o, mpfr_bin_fn fn) {
    if (o.prec() > prec()) {
      Real r = bin(*this, o, fn);
      *this = std::move(r);
    } else {
      fn(v_, v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  mpfr_t v_;
};

// acc += a * b, single rounding.
inline void fma_acc(Real& acc, const Real& a, const Real& b) {
  mpfr_fma(acc.raw(), a.raw(), b.raw(), acc.raw(), MPFR_RNDN);
}

// acc -= a * b.
inline void fms_acc(Real& acc, const Real& a, const Real& b) {
  mpfr_fms(acc.raw(), a.raw(), b.raw(), acc.raw(), MPFR_RNDN);
  mpfr_neg(acc.raw(), acc.raw(), MPFR_RNDN);
}

inline Real abs(const Real& a) {
  Real r(a);
  mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline Real sqrt(const Real& a) {
  Real r(a);
  mpfr_sqrt(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline Real exp(const Real& a) {
  Real r(a);
  mpfr_exp(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline Real log(const Real& a) {
  Real r(a);
  mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline Real log1p(const Real& a) {
  Real r(a);
  mpfr_log1p(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline Real sin(const Real& a) {
  Real r(a);
  mpfr_sin(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline Real cos(const Real& a) {
  Real r(a);
  mpfr_cos(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline Real atan2(const Real& y, const Real& x) {
  Real r(y.prec() >= x.prec() ? y.prec() : x.prec());
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& a, const Real& b) {
  Real r(a.prec() >= b.prec() ? a.prec() : b.prec());
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& a, long n) {
  Real r(a.prec());
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}

inline Real floor(const Real& a) {
  Real r(a);
  mpfr_floor(r.raw(), r.raw());
  return r;
}

inline Real round_nearest(const Real& a) {
  Real r(a);
  mpfr_rint(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

inline Real hypot(const Real& a, const Real& b) {
  Real r(a.prec() >= b.prec() ? a.prec() : b.prec());
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

inline const Real& min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline const Real& max(const Real& a, const Real& b) { return a >= b ? a : b; }

// log|Gamma(x)| with the sign of Gamma(x) in *sign; x must not be a pole.
inline Real lgamma_abs(const Real& x, int* sign) {
  Real r(x.prec());
  mpfr_lgamma(r.raw(), sign, x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace foxh

#endif  // FOXH_REAL_HPP_
