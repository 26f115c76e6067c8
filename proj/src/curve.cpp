#include "bk/curve.hpp"

#include <cmath>

namespace bk {

namespace {
using u64 = uint64_t;

mpq_class curve_rhs(const CurveFamily& E, const mpq_class& x) {
  return x * (x + 1) * (x + E.u * E.u);
}
}  // namespace

bool on_curve(const CurveFamily& E, const RationalPoint& P) {
  if (P.at_infinity) return true;
  return P.y * P.y == curve_rhs(E, P.x);
}

RationalPoint double_point(const CurveFamily& E, const RationalPoint& P) {
  if (P.at_infinity) return P;
  if (P.y == 0) return RationalPoint::infinity();
  mpq_class a2 = E.a2(), a4 = E.a4();
  mpq_class lam = (3 * P.x * P.x + 2 * a2 * P.x + a4) / (2 * P.y);
  mpq_class x3 = lam * lam - a2 - 2 * P.x;
  mpq_class y3 = lam * (P.x - x3) - P.y;
  return RationalPoint(x3, y3);
}

std::vector<RationalPoint> two_torsion(const CurveFamily& E) {
  return {RationalPoint::infinity(), RationalPoint(0, 0), RationalPoint(-1, 0),
          RationalPoint(-E.u * E.u, 0)};
}

std::vector<RationalPoint> rational_four_torsion(const CurveFamily& E) {
  const mpq_class& u = E.u;
  return {RationalPoint(u, u * (u + 1)), RationalPoint(u, -u * (u + 1)),
          RationalPoint(-u, u * (u - 1)), RationalPoint(-u, -u * (u - 1))};
}

bool four_exactly_divides(const CurveFamily& E) {
  if (!E.u_is_integer()) return false;
  mpz_class un = E.u.get_num();
  return mpz_divisible_ui_p(un.get_mpz_t(), 4) &&
         !mpz_divisible_ui_p(un.get_mpz_t(), 8);
}

ReductionProfile reduction_type(const CurveFamily& E, u64 p) {
  if (p == 2)
    throw domain_error("reduction_type: p = 2 is handled by reduction_at_two");
  if (!E.u_is_integer() || abs(E.u) <= 1)
    throw domain_error("reduction_type: integer u with |u| > 1 required");
  if (!is_prime_u64(p) || p % 2 == 0)
    throw domain_error("reduction_type: odd prime required");

  mpz_class un = E.u.get_num();
  mpz_class um1 = un - 1, up1 = un + 1;
  bool div_u = mpz_divisible_ui_p(un.get_mpz_t(), p);
  bool div_u2m1 = mpz_divisible_ui_p(um1.get_mpz_t(), p) ||
                  mpz_divisible_ui_p(up1.get_mpz_t(), p);

  ReductionProfile r;
  r.prime = p;
  if (!div_u && !div_u2m1) {
    r.kind = ReductionKind::good;
    r.local_ap = ap_good(E, p);
  } else if (div_u || p % 4 == 1) {
    r.kind = ReductionKind::split_multiplicative;
    r.local_ap = 1;
  } else {
    r.kind = ReductionKind::nonsplit_multiplicative;
    r.local_ap = -1;
  }
  return r;
}

ReductionProfile reduction_at_two(const CurveFamily& E) {
  if (!four_exactly_divides(E))
    throw domain_error(
        "reduction_at_two: 4||u fails (minimal-model analysis needs 4||u)");
  ReductionProfile r;
  r.prime = 2;
  r.kind = ReductionKind::good_ordinary_at_2;
  r.local_ap = 3 - minimal_model_f2_points(E);  // 1 + 2 - #E(F_2)
  return r;
}

int minimal_model_f2_points(const CurveFamily& E) {
  if (!four_exactly_divides(E))
    throw domain_error("minimal_model_f2_points: 4||u fails");
  mpz_class u = E.u.get_num();
  mpz_class a2q = u * u / 4, a4q = u * u / 16;
  int a2 = (int)mpz_fdiv_ui(a2q.get_mpz_t(), 2);
  int a4 = (int)mpz_fdiv_ui(a4q.get_mpz_t(), 2);
  int count = 1;  // O
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      int lhs = (y * y + x * y) & 1;
      int rhs = (x * x * x + a2 * x * x + a4 * x) & 1;
      if (lhs == rhs) ++count;
    }
  return count;
}

u64 conductor(const CurveFamily& E) {
  if (!four_exactly_divides(E))
    throw domain_error("conductor: 4||u fails");
  long u = E.u_long();
  u64 au = (u64)(u < 0 ? -u : u);
  u64 m = au / 4;  // odd part of u
  while (m % 2 == 0) m /= 2;
  u64 n = 1;
  for (auto& [p, e] : factorize(m).factors) n *= p;
  for (auto& [p, e] : factorize(au - 1).factors)
    if (p != 2) n *= p;
  for (auto& [p, e] : factorize(au + 1).factors)
    if (p != 2) n *= p;
  return n;
}

namespace {

// -sum_x chi(f(x)) over F_p for f = x^3 + a2 x^2 + a4 x, division-free:
// the cubic is tracked by finite differences and the square table by
// incremental steps, both with conditional subtracts only.
long ap_sum(u64 p, u64 a2, u64 a4, std::vector<uint8_t>& issq) {
  issq.assign(p, 0);
  u64 sq = 0;
  for (u64 i = 1; i <= (p - 1) / 2; ++i) {
    sq += 2 * i - 1;  // i^2 - (i-1)^2
    while (sq >= p) sq -= p;
    issq[sq] = 1;
  }
  auto redc = [p](u64 v) { return v >= p ? v - p : v; };
  // f(0) = 0; d1 = f(1)-f(0) = 1 + a2 + a4; d2 = 6 + 2 a2 (at x = 0); d3 = 6
  u64 f = 0;
  u64 d1 = redc(redc(1 + a2) + a4);
  u64 d2 = redc(redc(6 % p + a2) + a2);
  long nonzero = 0, squares = 0;
  for (u64 x = 0; x < p; ++x) {
    if (f != 0) {
      ++nonzero;
      squares += issq[f];
    }
    f = redc(f + d1);
    d1 = redc(d1 + d2);
    d2 = redc(d2 + 6 % p);
  }
  // sum chi(f(x)) = #squares - #nonsquares = 2*squares - nonzero
  return -(2 * squares - nonzero);
}

}  // namespace

long ap_good(const CurveFamily& E, u64 p) {
  if (!E.u_is_integer()) throw domain_error("ap_good: integer u required");
  if (p == 2 || !is_prime_u64(p)) throw domain_error("ap_good: odd prime required");
  mpz_class un = E.u.get_num();
  mpz_class u2 = un * un;
  u64 usq = mpz_fdiv_ui(u2.get_mpz_t(), p);
  if (usq % p == 0 || (usq + p - 1) % p == 0)
    throw domain_error("ap_good: p divides u(u^2-1), not a good prime");

  std::vector<uint8_t> issq;
  long ap = ap_sum(p, (1 + usq) % p, usq, issq);
  if ((double)ap * ap >= 4.0 * (double)p)
    throw std::runtime_error("ap_good: Hasse bound violated (bug)");
  return ap;
}

std::vector<long> an_coefficients(const CurveFamily& E, u64 n_max) {
  if (n_max == 0) throw domain_error("an_coefficients: n_max must be positive");
  if (!four_exactly_divides(E))
    throw domain_error("an_coefficients: 4||u required");
  long u = E.u_long();
  u64 au = (u64)(u < 0 ? -u : u);

  // smallest prime factor sieve
  std::vector<uint32_t> spf(n_max + 1, 0);
  std::vector<u64> primes;
  for (u64 i = 2; i <= n_max; ++i) {
    if (spf[i] == 0) {
      spf[i] = (uint32_t)i;
      primes.push_back(i);
    }
    for (u64 q : primes) {
      if (q > spf[i] || i * q > n_max) break;
      spf[i * q] = (uint32_t)q;
    }
  }

  std::vector<long> a(n_max + 1, 0);
  a[1] = 1;
  // a at primes
  std::vector<long> ap_of(primes.size());
  for (size_t i = 0; i < primes.size(); ++i) {
    u64 p = primes[i];
    if (p == 2) {
      ap_of[i] = -1;  // good ordinary at 2
    } else if (au % p == 0) {
      ap_of[i] = 1;
    } else if ((au - 1) % p == 0 || (au + 1) % p == 0) {
      ap_of[i] = (p % 4 == 1) ? 1 : -1;
    } else {
      ap_of[i] = ap_good(E, p);
    }
  }
  // prime powers, then multiplicativity via spf
  for (size_t i = 0; i < primes.size(); ++i) {
    u64 p = primes[i];
    bool bad = (p != 2) && (au % p == 0 || (au - 1) % p == 0 || (au + 1) % p == 0);
    long apk_2 = 1, apk_1 = ap_of[i];
    u64 pk = p;
    if (pk <= n_max) a[pk] = apk_1;
    while (pk <= n_max / p) {
      pk *= p;
      long next = bad ? apk_1 * ap_of[i] : ap_of[i] * apk_1 - (long)p * apk_2;
      a[pk] = next;
      apk_2 = apk_1;
      apk_1 = next;
    }
  }
  for (u64 n = 2; n <= n_max; ++n) {
    u64 p = spf[n];
    u64 pk = 1, m = n;
    while (m % p == 0) { m /= p; pk *= p; }
    if (m != 1) a[n] = a[pk] * a[m];
  }
  return a;
}

}  // namespace bk
