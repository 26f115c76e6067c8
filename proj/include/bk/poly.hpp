#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace bk {

// Dense polynomial over Q, coefficients low-to-high, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c) {
    if (c != 0) c_.push_back(c);
  }
  explicit Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly x() { return Poly(std::vector<mpq_class>{0, 1}); }

  int degree() const { return (int)c_.size() - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const mpq_class& coeff(int i) const {
    static const mpq_class zero = 0;
    return (i >= 0 && i < (int)c_.size()) ? c_[i] : zero;
  }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  const mpq_class& leading() const { return c_.back(); }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const mpq_class& s);
  Poly operator-() const { return *this * mpq_class(-1); }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // division with remainder over Q; b nonzero
  static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r);
  friend Poly operator/(const Poly& a, const Poly& b) {
    Poly q, r;
    divrem(a, b, q, r);
    if (!r.is_zero()) throw std::invalid_argument("Poly: inexact division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (mpq_class(1) / leading());
  }
  mpq_class eval(const mpq_class& x) const {
    mpq_class r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
  }
  Poly derivative() const;

  static Poly gcd(Poly a, Poly b);

  // multiplicity of root x0
  int root_multiplicity(const mpq_class& x0) const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpq_class> c_;
};

// Reduced rational function num/den, den monic.
class RatF {
 public:
  RatF() : num_(), den_(mpq_class(1)) {}
  RatF(Poly num, Poly den);
  explicit RatF(const Poly& p) : num_(p), den_(Poly(mpq_class(1))) {}
  explicit RatF(const mpq_class& c) : num_(Poly(c)), den_(Poly(mpq_class(1))) {}

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatF operator+(const RatF& a, const RatF& b);
  friend RatF operator-(const RatF& a, const RatF& b);
  friend RatF operator*(const RatF& a, const RatF& b);
  friend RatF operator/(const RatF& a, const RatF& b);
  RatF operator-() const { return RatF(-num_, den_); }
  bool operator==(const RatF& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  Poly num_, den_;
};

// Truncated Laurent series over Q in a local parameter t: coefficients for
// exponents [lo, trunc) are stored and exact; nothing is known from trunc on.
// kExact marks series with all coefficients known (embedded polynomials).
class QSeries {
 public:
  static constexpr long kExact = LONG_MAX / 4;

  QSeries() : lo_(0), trunc_(kExact) {}
  static QSeries scalar(const mpq_class& c) {
    QSeries s;
    if (c != 0) {
      s.lo_ = 0;
      s.c_ = {c};
    }
    return s;  // trunc = kExact
  }
  static QSeries monomial(const mpq_class& c, long e) {
    QSeries s;
    s.lo_ = e;
    if (c != 0) s.c_ = {c};
    return s;
  }
  static QSeries zero_to(long trunc) {
    QSeries s;
    s.lo_ = 0;
    s.trunc_ = trunc;
    return s;
  }

  long trunc() const { return trunc_; }
  mpq_class coeff(long e) const {
    if (e < lo_ || e >= lo_ + (long)c_.size()) return 0;
    return c_[e - lo_];
  }
  // first exponent with nonzero coefficient; nullopt if none stored
  std::optional<long> val() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return lo_ + (long)i;
    return std::nullopt;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries operator-() const;

  // multiplicative inverse; valuation must be visible within the window
  QSeries inverse() const;
  friend QSeries operator/(const QSeries& a, const QSeries& b) {
    return a * b.inverse();
  }

  // square root of a series of even valuation whose leading coefficient is
  // a rational square; branch chosen by sign of the given leading root
  QSeries sqrt_with_leading(const mpq_class& lead_root) const;

  QSeries truncated(long new_trunc) const;

 private:
  void trim();
  long lo_;
  long trunc_;
  std::vector<mpq_class> c_;  // exponents lo_ .. lo_+size-1
};

// Horner evaluation of p at a series argument.
QSeries eval_poly(const Poly& p, const QSeries& s);

}  // namespace bk
