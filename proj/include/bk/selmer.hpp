#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bk/ntheory.hpp"

namespace bk {

class hypothesis_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SelmerSets {
  std::vector<uint64_t> S;        // odd primes dividing u^2 - 1
  std::vector<uint64_t> S_prime;  // primes dividing u that are 1 mod 4
};

struct SelmerPair {
  uint64_t D = 1;        // squarefree, factors in S, D = 1 mod 8
  uint64_t D_prime = 1;  // squarefree, factors in S'
};

// Admissibility for the whole 2-part bookkeeping: u = 4 mod 8 and every odd
// prime in u(u^2-1)/4 with odd exponent. Throws naming the failing prime.
void require_admissible(uint64_t u);
bool is_admissible(uint64_t u);

SelmerSets selmer_sets(uint64_t u);

// All pairs (D, D') with: D' a square mod every p in S,
// 2^(ord_p D') D a square mod every p in S', and D = 1 mod 8.
std::vector<SelmerPair> selmer_pairs(uint64_t u);

// log2 of the pair count
int s_prime_u(uint64_t u);

struct TamagawaReport {
  struct PlaceOrd {
    uint64_t place;  // prime, or 0 for the infinite place
    int ord2_tam;
  };
  std::vector<PlaceOrd> per_prime;
  int ord2_product = 0;
  int h0_plus_ord2 = 2;   // both H^0 groups are non-cyclic of order 4
  int h0_minus_ord2 = 2;
};

// ord_2 of the local factors: 2 at p | u with p = 1 mod 4, 1 at p | u with
// p = 3 mod 4, 1 at each p | u^2-1, 1 at 2, 1 at the infinite place.
TamagawaReport tamagawa_ord2(uint64_t u);

// 2 omega_1(u) + omega_3(u) + omega(u^2-1) - 2 + s_u  (index term excluded)
long predicted_rhs(uint64_t u, int s_u);

}  // namespace bk
