#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace bk {

// Canonical factorization of a positive 64-bit integer.
// Primes are strictly increasing; every prime is certified by a
// deterministic Miller-Rabin base set valid below 2^64.
struct Factorization {
  uint64_t value = 1;
  std::vector<std::pair<uint64_t, int>> factors;  // (prime, exponent)

  bool all_exponents_odd() const {
    for (auto& [p, e] : factors)
      if (e % 2 == 0) return false;
    return true;
  }
};

struct OmegaCounts {
  int omega = 0;   // distinct prime divisors
  int omega1 = 0;  // those congruent to 1 mod 4 (2 never counted)
  int omega3 = 0;  // those congruent to 3 mod 4
};

class range_error_64 : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime_u64(uint64_t n);

// 1 <= n < 2^64. Trial division below 10^6, then Pollard-Brent rho with a
// deterministic parameter sequence on the (certified composite) cofactor.
Factorization factorize(uint64_t n);

OmegaCounts omega_counts(uint64_t n);
OmegaCounts omega_counts(const Factorization& f);

// Kronecker symbol (a|n), the full multiplicative extension of the
// Legendre symbol to all integers. (0,0) is rejected.
int kronecker(long long a, long long n);

// n = squarefree_part * square_part^2
std::pair<uint64_t, uint64_t> squarefree_decompose(uint64_t n);

inline int ord2_u64(uint64_t n) {
  int k = 0;
  while (n % 2 == 0) { n /= 2; ++k; }
  return k;
}

// ord_2 of a nonzero rational.
int ord2_q(const mpq_class& q);

// ord_p of a nonzero rational at an odd (or any) prime p.
int ordp_q(const mpq_class& q, uint64_t p);

}  // namespace bk
