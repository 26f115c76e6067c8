#include "bk/funcfield.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bk {

namespace {

mpq_class pow_q(const mpq_class& base, long e) {
  if (base == 0) throw std::invalid_argument("pow_q: zero base");
  mpq_class b = base;
  long n = e;
  if (n < 0) {
    b = 1 / b;
    n = -n;
  }
  mpq_class r = 1;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

struct Expansion {
  QSeries x, y;
};

// x(t), y(t) at P to the requested truncation order.
Expansion expand_point(const CurveFamily& E, const RationalPoint& P, long T) {
  Poly cubic = FFElement::x(E).cubic();
  if (P.at_infinity) {
    // t = x/y; w = t^2 x solves w = 1 - a2 t^2 - a4 t^4 / w
    mpq_class a2 = E.a2(), a4 = E.a4();
    long Tg = T + 8;
    QSeries w = QSeries::scalar(1);
    QSeries one = QSeries::scalar(1);
    QSeries a2t2 = QSeries::monomial(-a2, 2);
    QSeries a4t4 = QSeries::monomial(-a4, 4);
    long iters = Tg / 4 + 3;
    for (long i = 0; i < iters; ++i)
      w = (one + a2t2 + a4t4 * w.inverse()).truncated(Tg);
    QSeries tm2 = QSeries::monomial(1, -2), tm3 = QSeries::monomial(1, -3);
    return {w * tm2, w * tm3};
  }
  if (P.y == 0) {
    // t = y; x = x_P + s with s = t^2 / h(s), h(s) = cubic(x_P+s)/s
    Poly lin(std::vector<mpq_class>{-P.x, 1});
    Poly rest = cubic / lin;  // exact: x_P is a simple root
    // h(s) = rest(x_P + s)
    Poly h;
    {
      // substitute x -> x_P + s
      Poly s_poly(std::vector<mpq_class>{P.x, 1});
      Poly acc(mpq_class(1)), res;
      for (int i = 0; i <= rest.degree(); ++i) {
        res = res + acc * rest.coeff(i);
        acc = acc * s_poly;
      }
      h = res;
    }
    long Tg = T + 8;
    QSeries t2 = QSeries::monomial(1, 2);
    QSeries s = QSeries::zero_to(Tg);
    long iters = Tg / 2 + 3;
    for (long i = 0; i < iters; ++i)
      s = (t2 * eval_poly(h, s).inverse()).truncated(Tg);
    QSeries xs = QSeries::scalar(P.x) + s;
    return {xs, QSeries::monomial(1, 1).truncated(Tg)};
  }
  // t = x - x_P; y = y_P sqrt(cubic(x_P+t)/y_P^2)
  long Tg = T + 8;
  QSeries xs = QSeries::scalar(P.x) + QSeries::monomial(1, 1);
  QSeries cub = eval_poly(cubic, xs).truncated(Tg);
  QSeries ys = cub.sqrt_with_leading(P.y);
  return {xs.truncated(Tg), ys};
}

QSeries eval_ratf(const RatF& r, const QSeries& xs) {
  if (r.is_zero()) return QSeries::scalar(0);
  return eval_poly(r.num(), xs) / eval_poly(r.den(), xs);
}

QSeries expand_ffe(const FFElement& f, const RationalPoint& P, long T) {
  Expansion e = expand_point(f.curve(), P, T);
  QSeries sa = eval_ratf(f.a(), e.x);
  QSeries sb = eval_ratf(f.b(), e.x);
  return sa + sb * e.y;
}

long degree_budget(const FFElement& f) {
  long d = 4;
  d += std::max(0, f.a().num().degree()) + std::max(0, f.a().den().degree());
  d += std::max(0, f.b().num().degree()) + std::max(0, f.b().den().degree());
  return 2 * d + 16;
}

bool points_equal(const RationalPoint& a, const RationalPoint& b) { return a == b; }

}  // namespace

Poly FFElement::cubic() const {
  mpq_class u2 = E_->u * E_->u;
  return Poly(std::vector<mpq_class>{0, u2, u2 + 1, 1});
}

FFElement operator+(const FFElement& p, const FFElement& q) {
  return FFElement(p.curve(), p.a() + q.a(), p.b() + q.b());
}
FFElement operator-(const FFElement& p, const FFElement& q) {
  return FFElement(p.curve(), p.a() - q.a(), p.b() - q.b());
}
FFElement operator*(const FFElement& p, const FFElement& q) {
  RatF fc(p.cubic());
  return FFElement(p.curve(), p.a() * q.a() + p.b() * q.b() * fc,
                   p.a() * q.b() + p.b() * q.a());
}
RatF FFElement::norm() const {
  return a_ * a_ - b_ * b_ * RatF(cubic());
}
FFElement FFElement::inverse() const {
  if (is_zero()) throw std::invalid_argument("FFElement: inverse of zero");
  RatF n = norm();
  if (n.is_zero()) throw std::invalid_argument("FFElement: zero norm (not a unit)");
  RatF ninv = RatF(mpq_class(1)) / n;
  return FFElement(*E_, a_ * ninv, -(b_ * ninv));
}
FFElement operator/(const FFElement& p, const FFElement& q) {
  return p * q.inverse();
}

FFElement ff_v(const CurveFamily& E) {
  mpq_class u2 = E.u * E.u;
  FFElement num = FFElement::from_poly(E, Poly(std::vector<mpq_class>{u2, 1}));
  return num / FFElement::y(E);
}

FFElement ff_w_signed(const CurveFamily& E, const mpq_class& u) {
  Poly ux1(std::vector<mpq_class>{u, u});  // u(x+1)
  FFElement a = FFElement::from_poly(E, ux1);
  FFElement y = FFElement::y(E);
  return (a - y) / (a + y);
}
FFElement ff_w(const CurveFamily& E) { return ff_w_signed(E, E.u); }

FFElement ff_h_signed(const CurveFamily& E, const mpq_class& u) {
  Poly ux1(std::vector<mpq_class>{u, u});
  Poly xu(std::vector<mpq_class>{u, 1});
  FFElement num = FFElement::from_poly(E, ux1) + FFElement::y(E);
  return num / FFElement::from_poly(E, xu);
}
FFElement ff_h(const CurveFamily& E) { return ff_h_signed(E, E.u); }

SymbolList alpha_symbol(const CurveFamily& E) {
  return {{ff_v(E), ff_w(E), 1},
          {FFElement::from_const(E, -1), ff_h(E), 1}};
}

std::vector<RationalPoint> reference_points(const CurveFamily& E) {
  std::vector<RationalPoint> pts = two_torsion(E);
  for (auto& p : rational_four_torsion(E)) pts.push_back(p);
  return pts;  // O + 3 + 4 = 8 distinct points
}

std::pair<long, mpq_class> ord_and_lead(const FFElement& f, const RationalPoint& P) {
  if (f.is_zero()) throw std::invalid_argument("ord/lead: zero function rejected");
  if (!on_curve(f.curve(), P))
    throw std::invalid_argument("ord/lead: point not on the curve");
  long T = degree_budget(f);
  QSeries s = expand_ffe(f, P, T);
  auto v = s.val();
  if (!v || *v >= s.trunc())
    throw std::runtime_error("ord/lead: valuation not visible at budgeted order (bug)");
  return {*v, s.coeff(*v)};
}

long valuation_at(const FFElement& f, const RationalPoint& P) {
  return ord_and_lead(f, P).first;
}

mpq_class leading_value(const FFElement& f, const RationalPoint& P) {
  return ord_and_lead(f, P).second;
}

Divisor divisor(const FFElement& f) {
  if (f.is_zero()) throw std::invalid_argument("divisor: zero function rejected");
  const CurveFamily& E = f.curve();

  // common-denominator form (A + B y)/D
  Poly D1 = f.a().den(), D2 = f.b().den();
  Poly G = Poly::gcd(D1, D2);
  Poly D = (D1 * D2) / G;
  Poly A = f.a().num() * (D / D1);
  Poly B = f.b().num() * (D / D2);
  FFElement g(E, RatF(A), RatF(B));

  long ordOg;
  if (B.is_zero())
    ordOg = -2L * A.degree();
  else if (A.is_zero())
    ordOg = -3 - 2L * B.degree();
  else
    ordOg = std::min(-2L * A.degree(), -3 - 2L * B.degree());

  std::vector<RationalPoint> pts = reference_points(E);
  std::map<size_t, long> mult;  // index into pts (0 = O)

  long zeros_total = 0;
  for (size_t i = 1; i < pts.size(); ++i) {
    long o = valuation_at(g, pts[i]);
    if (o < 0) throw std::runtime_error("divisor: negative order for numerator (bug)");
    if (o) mult[i] += o;
    zeros_total += o;
  }
  if (zeros_total != -ordOg)
    throw irrational_support_error(
        "divisor: support outside the rational reference points");
  if (ordOg) mult[0] += ordOg;

  if (!D.is_zero() && D.degree() > 0) {
    long dtotal = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
      int m = D.root_multiplicity(pts[i].x);
      long o = (long)m * (pts[i].y == 0 ? 2 : 1);
      if (o) mult[i] -= o;
      dtotal += o;
    }
    if (dtotal != 2L * D.degree())
      throw irrational_support_error(
          "divisor: denominator support outside the rational reference points");
    mult[0] += 2L * D.degree();
  }

  Divisor out;
  long degsum = 0;
  for (auto& [i, m] : mult) {
    if (m == 0) continue;
    out.push_back({pts[i], m});
    degsum += m;
  }
  if (degsum != 0) throw std::runtime_error("divisor: nonzero total degree (bug)");
  return out;
}

mpq_class tame_symbol_at(const RationalPoint& P, const SymbolList& s) {
  mpq_class acc = 1;
  for (auto& term : s) {
    auto [m1, l1] = ord_and_lead(term.f, P);
    auto [m2, l2] = ord_and_lead(term.g, P);
    mpq_class val = pow_q(l1, m2) / pow_q(l2, m1);
    if ((m1 * m2) % 2 != 0) val = -val;
    acc *= pow_q(val, term.multiplicity);
  }
  return acc;
}

bool product_formula_check(const SymbolList& s,
                           const std::vector<RationalPoint>& support) {
  // completeness: every entry's divisor must be supported inside `support`
  for (auto& term : s) {
    for (const FFElement* f : {&term.f, &term.g}) {
      if (f->a().num().degree() <= 0 && f->b().is_zero() &&
          f->a().den().degree() <= 0)
        continue;  // constants have empty divisor
      for (auto& de : divisor(*f)) {
        bool found = false;
        for (auto& p : support)
          if (points_equal(p, de.point)) { found = true; break; }
        if (!found)
          throw irrational_support_error("product_formula_check: support incomplete");
      }
    }
  }
  mpq_class prod = 1;
  for (auto& P : support) prod *= tame_symbol_at(P, s);
  return prod == 1;
}

AlphaReport verify_alpha(const CurveFamily& E) {
  SymbolList alpha = alpha_symbol(E);
  AlphaReport rep;
  rep.all_trivial = true;
  for (auto& P : reference_points(E)) {
    mpq_class t = tame_symbol_at(P, alpha);
    rep.entries.push_back({P, t});
    if (t != 1) rep.all_trivial = false;
  }
  rep.product_formula_ok = product_formula_check(alpha, reference_points(E));
  return rep;
}

namespace {

uint64_t mod_of_mpz(const mpz_class& z, uint64_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
  unsigned __int128 r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return (uint64_t)r;
}

// p-unit part of q evaluated mod p
uint64_t unit_mod_p(const mpq_class& q, int vp, uint64_t p) {
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class pp(static_cast<unsigned long>(p));
  int v = vp;
  while (v > 0 && mpz_divisible_p(num.get_mpz_t(), pp.get_mpz_t())) { num /= pp; --v; }
  while (v < 0 && mpz_divisible_p(den.get_mpz_t(), pp.get_mpz_t())) { den /= pp; ++v; }
  uint64_t n = mod_of_mpz(num, p), d = mod_of_mpz(den, p);
  return (uint64_t)((unsigned __int128)n * powmod_u64(d, p - 2, p) % p);
}

void collect_primes(const mpz_class& z0, std::set<uint64_t>& out) {
  mpz_class z = abs(z0);
  if (z <= 1) return;
  if (!z.fits_ulong_p()) {
    for (uint64_t p = 3; p < 1000000; p += 2)
      while (mpz_divisible_ui_p(z.get_mpz_t(), p)) { out.insert(p); z /= p; }
    while (mpz_divisible_ui_p(z.get_mpz_t(), 2)) z /= 2;
    if (!z.fits_ulong_p())
      throw std::runtime_error("k2q_support: entry too large to certify");
  }
  uint64_t m = mpz_get_ui(z.get_mpz_t());
  for (auto& [p, e] : factorize(m).factors)
    if (p != 2) out.insert(p);
}

}  // namespace

uint64_t k2q_tame(const K2QElement& e, uint64_t p) {
  if (p < 3 || !is_prime_u64(p))
    throw std::invalid_argument("k2q_tame: odd prime required");
  uint64_t acc = 1;
  for (auto& t : e) {
    int va = ordp_q(t.a, p), vb = ordp_q(t.b, p);
    uint64_t ua = unit_mod_p(t.a, va, p), ub = unit_mod_p(t.b, vb, p);
    // (-1)^(va vb) a^vb b^(-va) mod p
    uint64_t val = 1;
    if ((long)va * vb % 2 != 0) val = p - 1;
    auto mul_pow = [&](uint64_t base, long ee) {
      uint64_t x = (ee >= 0) ? powmod_u64(base, (uint64_t)ee, p)
                             : powmod_u64(powmod_u64(base, p - 2, p), (uint64_t)(-ee), p);
      val = (uint64_t)((unsigned __int128)val * x % p);
    };
    mul_pow(ua, vb);
    mul_pow(ub, -(long)va);
    long m = t.multiplicity;
    uint64_t x = (m >= 0) ? powmod_u64(val, (uint64_t)m, p)
                          : powmod_u64(powmod_u64(val, p - 2, p), (uint64_t)(-m), p);
    acc = (uint64_t)((unsigned __int128)acc * x % p);
  }
  return acc;
}

int k2q_tame_infinity(const K2QElement& e) {
  long parity = 0;
  for (auto& t : e)
    if (t.a < 0 && t.b < 0) parity += t.multiplicity;
  return (parity % 2 == 0) ? 1 : -1;
}

std::vector<uint64_t> k2q_support(const K2QElement& e) {
  std::set<uint64_t> s;
  for (auto& t : e) {
    collect_primes(t.a.get_num(), s);
    collect_primes(t.a.get_den(), s);
    collect_primes(t.b.get_num(), s);
    collect_primes(t.b.get_den(), s);
  }
  return {s.begin(), s.end()};
}

bool k2q_equal(const K2QElement& e1, const K2QElement& e2) {
  if (k2q_tame_infinity(e1) != k2q_tame_infinity(e2)) return false;
  std::set<uint64_t> ps;
  for (auto p : k2q_support(e1)) ps.insert(p);
  for (auto p : k2q_support(e2)) ps.insert(p);
  for (auto p : ps)
    if (k2q_tame(e1, p) != k2q_tame(e2, p)) return false;
  return true;
}

K2QElement pullback_at(const RationalPoint& P, const SymbolList& s) {
  if (tame_symbol_at(P, s) != 1)
    throw std::domain_error("pullback_at: not in kernel at P");
  // With f = pi^m f0 and g = pi^n g0 (pi the standard uniformizer), all
  // pi-carrying parts combine into {pi, G} with G(P) = T_P(s)^(-1) = 1,
  // which pulls back to 0; the rest evaluates entrywise.
  K2QElement out;
  for (auto& term : s) {
    mpq_class l1 = ord_and_lead(term.f, P).second;
    mpq_class l2 = ord_and_lead(term.g, P).second;
    if (l1 == 1 || l2 == 1) continue;
    out.push_back({l1, l2, term.multiplicity});
  }
  return out;
}

bool isogeny_identity_with_rhs(const CurveFamily& E, const mpq_class& rhs) {
  FFElement v = ff_v(E), w = ff_w(E);
  FFElement X = -(v * w), Y = v / w;
  FFElement lhs = X + Y + X.inverse() + Y.inverse() - FFElement::from_const(E, rhs);
  return lhs.is_zero();
}

bool isogeny_identity(const CurveFamily& E) {
  return isogeny_identity_with_rhs(E, 4 * E.u);
}

std::optional<RationalPoint> symbol_lists_mismatch(const CurveFamily& E,
                                                   const SymbolList& s1,
                                                   const SymbolList& s2) {
  for (auto& P : reference_points(E)) {
    mpq_class t1 = tame_symbol_at(P, s1), t2 = tame_symbol_at(P, s2);
    if (t1 != t2) return P;
    if (t1 == 1) {
      if (!k2q_equal(pullback_at(P, s1), pullback_at(P, s2))) return P;
    }
  }
  return std::nullopt;
}

bool pullback_symbol_relation(const CurveFamily& E) {
  FFElement v = ff_v(E), w = ff_w(E);
  SymbolList lhs = {{-(v * w), v / w, 1}};
  SymbolList rhs = {{v, w.inverse(), 2}, {-v, v, 2}};
  return !symbol_lists_mismatch(E, lhs, rhs).has_value();
}

int m_u(uint64_t u) {
  Factorization f = factorize(u + 1);
  int best = 64;
  for (auto& [q, e] : f.factors) best = std::min(best, ord2_u64(q - 1));
  return best;
}

}  // namespace bk
