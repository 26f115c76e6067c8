#include "bk/selmer.hpp"

#include <algorithm>

namespace bk {

namespace {

// factorizations of u/4, u-1, u+1 (pairwise coprime for u = 4 mod 8)
struct Parts {
  Factorization u4, um1, up1;
};

Parts split_parts(uint64_t u) {
  return {factorize(u / 4), factorize(u - 1), factorize(u + 1)};
}

}  // namespace

bool is_admissible(uint64_t u) {
  if (u < 4 || u % 8 != 4) return false;
  Parts p = split_parts(u);
  return p.u4.all_exponents_odd() && p.um1.all_exponents_odd() &&
         p.up1.all_exponents_odd();
}

void require_admissible(uint64_t u) {
  if (u < 4 || u % 8 != 4)
    throw hypothesis_error("u = " + std::to_string(u) + ": u = 4 mod 8 fails");
  Parts p = split_parts(u);
  for (const Factorization* f : {&p.u4, &p.um1, &p.up1})
    for (auto& [q, e] : f->factors)
      if (e % 2 == 0)
        throw hypothesis_error("u = " + std::to_string(u) + ": prime " +
                               std::to_string(q) +
                               " has even exponent in u(u^2-1)/4");
}

SelmerSets selmer_sets(uint64_t u) {
  require_admissible(u);
  Parts p = split_parts(u);
  SelmerSets s;
  for (auto& [q, e] : p.um1.factors) s.S.push_back(q);
  for (auto& [q, e] : p.up1.factors) s.S.push_back(q);
  std::sort(s.S.begin(), s.S.end());
  for (auto& [q, e] : p.u4.factors)
    if (q % 4 == 1) s.S_prime.push_back(q);
  return s;
}

std::vector<SelmerPair> selmer_pairs(uint64_t u) {
  SelmerSets sets = selmer_sets(u);
  const auto& S = sets.S;
  const auto& Sp = sets.S_prime;

  std::vector<SelmerPair> out;
  for (uint64_t dm = 0; dm < (1ull << S.size()); ++dm) {
    uint64_t D = 1;
    for (size_t i = 0; i < S.size(); ++i)
      if (dm >> i & 1) D *= S[i];
    if (D % 8 != 1) continue;
    for (uint64_t pm = 0; pm < (1ull << Sp.size()); ++pm) {
      uint64_t Dp = 1;
      for (size_t i = 0; i < Sp.size(); ++i)
        if (pm >> i & 1) Dp *= Sp[i];
      bool ok = true;
      for (uint64_t p : S) {
        if (Dp % p == 0)
          throw std::runtime_error("selmer_pairs: D' shares a factor with S (bug)");
        if (kronecker((long long)(Dp % p), (long long)p) != 1) { ok = false; break; }
      }
      if (!ok) continue;
      for (uint64_t p : Sp) {
        if (D % p == 0)
          throw std::runtime_error("selmer_pairs: D shares a factor with S' (bug)");
        long long a = (long long)(D % p);
        if (Dp % p == 0) a = (long long)((2 * (D % p)) % p);  // 2^(ord_p D') D
        if (kronecker(a, (long long)p) != 1) { ok = false; break; }
      }
      if (!ok) continue;
      out.push_back({D, Dp});
    }
  }
  // (1,1) always qualifies and the set is a kernel of F_2-linear conditions
  if (out.empty() || !(out.front().D == 1 && out.front().D_prime == 1))
    throw std::runtime_error("selmer_pairs: (1,1) missing (bug)");
  size_t n = out.size();
  if ((n & (n - 1)) != 0)
    throw std::runtime_error("selmer_pairs: count not a power of 2 (bug)");
  return out;
}

int s_prime_u(uint64_t u) {
  size_t n = selmer_pairs(u).size();
  int s = 0;
  while ((size_t(1) << s) < n) ++s;
  return s;
}

TamagawaReport tamagawa_ord2(uint64_t u) {
  require_admissible(u);
  // |u^2-1| is never a square here (u^2-1 = 7 mod 8)
  Parts p = split_parts(u);
  TamagawaReport rep;
  for (auto& [q, e] : p.u4.factors)
    rep.per_prime.push_back({q, q % 4 == 1 ? 2 : 1});
  for (auto& [q, e] : p.um1.factors) rep.per_prime.push_back({q, 1});
  for (auto& [q, e] : p.up1.factors) rep.per_prime.push_back({q, 1});
  rep.per_prime.push_back({2, 1});
  rep.per_prime.push_back({0, 1});  // infinite place
  for (auto& pl : rep.per_prime) rep.ord2_product += pl.ord2_tam;
  return rep;
}

long predicted_rhs(uint64_t u, int s_u) {
  require_admissible(u);
  OmegaCounts cu = omega_counts(u);
  OmegaCounts cm = omega_counts(u - 1), cp = omega_counts(u + 1);
  long omega_u2m1 = cm.omega + cp.omega;  // u-1, u+1 coprime and odd
  return 2L * cu.omega1 + cu.omega3 + omega_u2m1 - 2 + s_u;
}

}  // namespace bk
