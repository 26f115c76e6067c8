#include "bk/ntheory.hpp"

#include <algorithm>
#include <numeric>

namespace bk {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Deterministic below 2^64 with this base set (Sinclair / Jaeschke tables).
const u64 kMRBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

u64 pollard_brent(u64 n, u64 c) {
  u64 x = 2, y = 2, d = 1, q = 1, ys = 0, r = 1;
  const u64 m = 128;
  auto f = [n, c](u64 v) { return (mulmod(v, v, n) + c) % n; };
  while (d == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && d == 1; k += m) {
      ys = y;
      u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      d = std::gcd(q, n);
    }
    r <<= 1;
  }
  if (d == n) {
    do {
      ys = f(ys);
      d = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (d == 1);
  }
  return d;
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = n;
  for (u64 c = 1; d == n; ++c) d = pollard_brent(n, c);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  for (u64 a : kMRBases)
    if (!miller_rabin(n, a)) return false;
  return true;
}

Factorization factorize(u64 n) {
  if (n < 1) throw range_error_64("factorize: n must be positive");
  Factorization f;
  f.value = n;
  std::vector<u64> primes;
  for (u64 p : {2ull, 3ull, 5ull}) {
    while (n % p == 0) { primes.push_back(p); n /= p; }
  }
  // wheel over residues coprime to 30, up to 10^6
  static const int wheel[] = {4, 2, 4, 2, 4, 6, 2, 6};
  u64 p = 7;
  int wi = 0;
  while (p <= 1000000 && p * p <= n) {
    while (n % p == 0) { primes.push_back(p); n /= p; }
    p += wheel[wi];
    wi = (wi + 1) & 7;
  }
  if (n > 1) {
    if (n < u64(1000003) * 1000003)  // cofactor below trial bound squared is prime
      primes.push_back(n);
    else
      factor_rec(n, primes);
  }
  std::sort(primes.begin(), primes.end());
  for (u64 q : primes) {
    if (!f.factors.empty() && f.factors.back().first == q)
      f.factors.back().second++;
    else
      f.factors.emplace_back(q, 1);
  }
  return f;
}

OmegaCounts omega_counts(const Factorization& f) {
  OmegaCounts c;
  for (auto& [p, e] : f.factors) {
    c.omega++;
    if (p % 4 == 1) c.omega1++;
    if (p % 4 == 3) c.omega3++;
  }
  return c;
}

OmegaCounts omega_counts(u64 n) { return omega_counts(factorize(n)); }

int kronecker(long long a, long long n) {
  if (a == 0 && n == 0) throw range_error_64("kronecker: (0,0) undefined");
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) sign = -sign;
  }
  int v = 0;
  while (n % 2 == 0) { n /= 2; ++v; }
  if (v % 2 == 1) {
    long long am = ((a % 8) + 8) % 8;
    if (am % 2 == 0) return 0;
    if (am == 3 || am == 5) sign = -sign;
  }
  // Jacobi symbol (a|n) for odd n > 0
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long r = n % 8;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) sign = -sign;
    a %= n;
  }
  if (n != 1) return 0;
  return sign;
}

std::pair<u64, u64> squarefree_decompose(u64 n) {
  Factorization f = factorize(n);
  u64 sf = 1, sq = 1;
  for (auto& [p, e] : f.factors) {
    if (e % 2 == 1) sf *= p;
    for (int i = 0; i < e / 2; ++i) sq *= p;
  }
  return {sf, sq};
}

int ord2_q(const mpq_class& q) {
  if (q == 0) throw range_error_64("ord2_q: zero");
  return (int)(mpz_scan1(q.get_num().get_mpz_t(), 0) -
               mpz_scan1(q.get_den().get_mpz_t(), 0));
}

int ordp_q(const mpq_class& q, u64 p) {
  if (q == 0) throw range_error_64("ordp_q: zero");
  mpz_class pp(static_cast<unsigned long>(p));
  mpz_class n = q.get_num(), d = q.get_den();
  int v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) { n /= pp; ++v; }
  while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) { d /= pp; --v; }
  return v;
}

}  // namespace bk
