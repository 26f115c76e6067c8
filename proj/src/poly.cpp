#include "bk/poly.hpp"

#include <algorithm>

namespace bk {

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const mpq_class& s) {
  if (s == 0) return Poly();
  std::vector<mpq_class> c = a.c_;
  for (auto& q : c) q *= s;
  return Poly(std::move(c));
}

void Poly::divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::invalid_argument("Poly::divrem: division by zero");
  std::vector<mpq_class> rem = a.c_;
  int db = b.degree();
  std::vector<mpq_class> quo;
  if ((int)rem.size() - 1 >= db) quo.assign(rem.size() - db, mpq_class(0));
  for (int i = (int)rem.size() - 1; i >= db; --i) {
    if (rem[i] == 0) continue;
    mpq_class f = rem[i] / b.c_[db];
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<mpq_class> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * (long)i;
  return Poly(std::move(d));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divrem(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

int Poly::root_multiplicity(const mpq_class& x0) const {
  if (is_zero()) throw std::invalid_argument("root_multiplicity of zero poly");
  Poly lin(std::vector<mpq_class>{-x0, 1});
  Poly p = *this;
  int m = 0;
  while (true) {
    Poly q, r;
    divrem(p, lin, q, r);
    if (!r.is_zero()) break;
    ++m;
    p = q;
  }
  return m;
}

RatF::RatF(Poly num, Poly den) {
  if (den.is_zero()) throw std::invalid_argument("RatF: zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(mpq_class(1));
    return;
  }
  Poly g = Poly::gcd(num, den);
  num = num / g;
  den = den / g;
  mpq_class lead = den.leading();
  num_ = num * (mpq_class(1) / lead);
  den_ = den * (mpq_class(1) / lead);
}

RatF operator+(const RatF& a, const RatF& b) {
  return RatF(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatF operator-(const RatF& a, const RatF& b) {
  return RatF(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RatF operator*(const RatF& a, const RatF& b) {
  return RatF(a.num_ * b.num_, a.den_ * b.den_);
}
RatF operator/(const RatF& a, const RatF& b) {
  if (b.is_zero()) throw std::invalid_argument("RatF: division by zero");
  return RatF(a.num_ * b.den_, a.den_ * b.num_);
}

void QSeries::trim() {
  while (!c_.empty() && c_.back() == 0 && lo_ + (long)c_.size() > trunc_)
    c_.pop_back();
  while (!c_.empty() && c_.front() == 0) {
    c_.erase(c_.begin());
    ++lo_;
  }
  if (c_.empty()) lo_ = std::min(lo_, trunc_);
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  QSeries r;
  r.trunc_ = std::min(a.trunc_, b.trunc_);
  long lo = std::min(a.c_.empty() ? r.trunc_ : a.lo_, b.c_.empty() ? r.trunc_ : b.lo_);
  long hi = std::min(r.trunc_, std::max(a.lo_ + (long)a.c_.size(), b.lo_ + (long)b.c_.size()));
  r.lo_ = lo;
  if (hi > lo) {
    r.c_.assign(hi - lo, mpq_class(0));
    for (long e = lo; e < hi; ++e) r.c_[e - lo] = a.coeff(e) + b.coeff(e);
  }
  r.trim();
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries r;
  if (a.c_.empty() || b.c_.empty()) {
    // product vanishes on the joint window
    long ta = a.c_.empty() ? a.trunc_ : a.lo_;
    long tb = b.c_.empty() ? b.trunc_ : b.lo_;
    r.lo_ = 0;
    r.trunc_ = (ta >= QSeries::kExact / 2 || tb >= QSeries::kExact / 2)
                   ? QSeries::kExact
                   : ta + tb;
    return r;
  }
  long t1 = (b.trunc_ >= QSeries::kExact / 2) ? QSeries::kExact : a.lo_ + b.trunc_;
  long t2 = (a.trunc_ >= QSeries::kExact / 2) ? QSeries::kExact : b.lo_ + a.trunc_;
  r.trunc_ = std::min(std::min(t1, t2), QSeries::kExact);
  r.lo_ = a.lo_ + b.lo_;
  long len = (r.trunc_ >= QSeries::kExact / 2)
                 ? (long)(a.c_.size() + b.c_.size()) - 1
                 : std::min(r.trunc_ - r.lo_, (long)(a.c_.size() + b.c_.size()) - 1);
  if (len <= 0) {
    r.c_.clear();
    r.trim();
    return r;
  }
  r.c_.assign(len, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size() && (long)(i + j) < len; ++j)
      r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

QSeries QSeries::inverse() const {
  auto v = val();
  if (!v) throw std::invalid_argument("QSeries::inverse: no visible valuation");
  long n = (trunc_ >= kExact / 2) ? (long)c_.size() + 4 : trunc_ - *v;  // unit terms known
  std::vector<mpq_class> u(n, mpq_class(0));
  for (long k = 0; k < n; ++k) u[k] = coeff(*v + k);
  std::vector<mpq_class> w(n, mpq_class(0));
  w[0] = 1 / u[0];
  for (long k = 1; k < n; ++k) {
    mpq_class s = 0;
    for (long j = 1; j <= k; ++j) s += u[j] * w[k - j];
    w[k] = -s / u[0];
  }
  QSeries r;
  r.lo_ = -*v;
  r.trunc_ = (trunc_ >= kExact / 2) ? -*v + n : trunc_ - 2 * *v;
  r.c_.assign(w.begin(), w.begin() + std::min<long>(n, r.trunc_ - r.lo_));
  r.trim();
  return r;
}

QSeries QSeries::sqrt_with_leading(const mpq_class& lead_root) const {
  auto v = val();
  if (!v || *v % 2 != 0)
    throw std::invalid_argument("QSeries::sqrt: even visible valuation required");
  long n = trunc_ >= kExact / 2 ? (long)c_.size() + 4 : trunc_ - *v;
  mpq_class u0 = coeff(*v);
  if (lead_root * lead_root != u0)
    throw std::invalid_argument("QSeries::sqrt: leading coefficient mismatch");
  // w_k from w^2 = u, unit part
  std::vector<mpq_class> u(n, mpq_class(0)), w(n, mpq_class(0));
  for (long k = 0; k < n; ++k) u[k] = coeff(*v + k);
  w[0] = lead_root;
  for (long k = 1; k < n; ++k) {
    mpq_class s = 0;
    for (long j = 1; j < k; ++j) s += w[j] * w[k - j];
    w[k] = (u[k] - s) / (2 * w[0]);
  }
  QSeries r;
  r.lo_ = *v / 2;
  r.trunc_ = (trunc_ >= kExact / 2) ? r.lo_ + n : trunc_ - *v / 2;
  r.c_.assign(w.begin(), w.begin() + std::min<long>(n, r.trunc_ - r.lo_));
  r.trim();
  return r;
}

QSeries QSeries::truncated(long new_trunc) const {
  QSeries r = *this;
  if (new_trunc < r.trunc_) {
    r.trunc_ = new_trunc;
    if (r.lo_ + (long)r.c_.size() > new_trunc)
      r.c_.resize(std::max<long>(0, new_trunc - r.lo_));
    r.trim();
  }
  return r;
}

QSeries eval_poly(const Poly& p, const QSeries& s) {
  QSeries r = QSeries::scalar(0);
  for (int i = p.degree(); i >= 0; --i)
    r = r * s + QSeries::scalar(p.coeff(i));
  return r;
}

}  // namespace bk
