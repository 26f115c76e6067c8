#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace bk {

// Working precision, in decimal digits, for the analytic side.
struct Precision {
  int decimal_digits = 25;
  // bits carry ~9 guard digits on top of the requested ones
  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>((decimal_digits + 9) * 3.3220) + 8;
  }
};

// Thin RAII value type over mpfr_t. Results carry the larger operand
// precision; rounding is always to nearest.
class Real {
 public:
  Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const mpq_class& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Real(const mpz_class& z, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static Real pi(mpfr_prec_t p) { Real r(p); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
  static Real euler_gamma(mpfr_prec_t p) { Real r(p); mpfr_const_euler(r.v_, MPFR_RNDN); return r; }

  friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
  Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

  friend Real operator*(const Real& a, long b) { Real r(a); r *= b; return r; }
  friend Real operator/(const Real& a, long b) { Real r(a); r /= b; return r; }
  friend Real operator+(const Real& a, long b) { Real r(a); mpfr_add_si(r.v_, r.v_, b, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, long b) { Real r(a); mpfr_sub_si(r.v_, r.v_, b, MPFR_RNDN); return r; }

  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  friend bool operator<(const Real& a, const Real& b) { return a.cmp(b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return a.cmp(b) >= 0; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  std::string str(int digits = 20) const;

  friend Real abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real sqrt(const Real& a) { return un(a, mpfr_sqrt); }
  friend Real exp(const Real& a) { return un(a, mpfr_exp); }
  friend Real log(const Real& a) { return un(a, mpfr_log); }
  friend Real sin(const Real& a) { return un(a, mpfr_sin); }
  friend Real atan(const Real& a) { return un(a, mpfr_atan); }
  friend Real atanh(const Real& a) { return un(a, mpfr_atanh); }
  friend Real cosh(const Real& a) { return un(a, mpfr_cosh); }
  friend Real tanh(const Real& a) { return un(a, mpfr_tanh); }
  friend Real floor(const Real& a) {
    Real r(a.prec());
    mpfr_floor(r.v_, a.v_);
    return r;
  }
  friend Real round_nearest(const Real& a) {
    Real r(a.prec());
    mpfr_round(r.v_, a.v_);
    return r;
  }
  friend Real pow_si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  // 10^e at precision p
  static Real pow10(long e, mpfr_prec_t p) {
    Real r(p);
    mpfr_set_si(r.v_, 10, MPFR_RNDN);
    mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

 private:
  using BinF = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnF = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(const Real& a, const Real& b, BinF f) {
    Real r(std::max(a.prec(), b.prec()));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static Real un(const Real& a, UnF f) {
    Real r(a.prec());
    f(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

// Continued-fraction convergent p/q of x with q <= max_denominator and
// |x - p/q| <= tolerance. Throws if no convergent qualifies.
mpq_class rational_reconstruct(const Real& x, unsigned long max_denominator,
                               const Real& tolerance);

}  // namespace bk
