#include <doctest.h>

#include "bk/selmer.hpp"

using namespace bk;

TEST_CASE("admissibility") {
  CHECK(is_admissible(4));
  CHECK(is_admissible(12));
  CHECK_FALSE(is_admissible(8));    // 8 | u
  CHECK_FALSE(is_admissible(36));   // u/4 = 9 has even exponent
  CHECK_FALSE(is_admissible(44));   // u+1 = 45 = 3^2 * 5
  CHECK_THROWS_AS(require_admissible(8), hypothesis_error);
  CHECK_THROWS_AS(require_admissible(36), hypothesis_error);
  // the error names the failing prime
  try {
    require_admissible(44);
    CHECK(false);
  } catch (const hypothesis_error& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("prime sets") {
  auto s4 = selmer_sets(4);
  CHECK(s4.S == std::vector<uint64_t>{3, 5});
  CHECK(s4.S_prime.empty());

  auto s292 = selmer_sets(292);
  CHECK(s292.S == std::vector<uint64_t>{3, 97, 293});
  CHECK(s292.S_prime == std::vector<uint64_t>{73});

  auto s1020 = selmer_sets(1020);
  CHECK(s1020.S == std::vector<uint64_t>{1019, 1021});
  CHECK(s1020.S_prime == std::vector<uint64_t>{5, 17});
}

TEST_CASE("pair enumeration reproduces the worked examples") {
  auto pairs_of = [](uint64_t u) {
    std::vector<std::pair<uint64_t, uint64_t>> v;
    for (auto& p : selmer_pairs(u)) v.emplace_back(p.D, p.D_prime);
    return v;
  };
  using V = std::vector<std::pair<uint64_t, uint64_t>>;
  CHECK(pairs_of(4) == V{{1, 1}});
  CHECK(pairs_of(292) == V{{1, 1}, {1, 73}, {97, 1}, {97, 73}});
  CHECK(pairs_of(1020) == V{{1, 1}, {1, 17}});
  CHECK(pairs_of(1060) == V{{1, 1}, {353, 265}});
}

TEST_CASE("s'_u examples") {
  CHECK(s_prime_u(52) == 1);
  CHECK(s_prime_u(92) == 2);
  CHECK(s_prime_u(428) == 3);
}

TEST_CASE("pair counts are powers of two with (1,1) first") {
  for (uint64_t u = 4; u <= 2000; u += 8) {
    if (!is_admissible(u)) continue;
    auto pairs = selmer_pairs(u);
    CHECK(pairs.front().D == 1);
    CHECK(pairs.front().D_prime == 1);
    size_t n = pairs.size();
    CHECK((n & (n - 1)) == 0);
    // every listed pair satisfies the three conditions literally
    auto sets = selmer_sets(u);
    for (auto& pr : pairs) {
      CHECK(pr.D % 8 == 1);
      for (uint64_t p : sets.S)
        CHECK(kronecker((long long)(pr.D_prime % p), (long long)p) == 1);
      for (uint64_t p : sets.S_prime) {
        long long a = (long long)(pr.D % p);
        if (pr.D_prime % p == 0) a = (2 * a) % (long long)p;
        CHECK(kronecker(a, (long long)p) == 1);
      }
    }
  }
}

TEST_CASE("Tamagawa 2-parts") {
  auto t20 = tamagawa_ord2(20);
  CHECK(t20.ord2_product == 7);  // 2*1 + 0 + 3 + 2
  // per-place: 5 -> 2; 3, 7, 19 -> 1; place 2 -> 1; infinite place -> 1
  int got5 = 0, got3 = 0;
  for (auto& pl : t20.per_prime) {
    if (pl.place == 5) { CHECK(pl.ord2_tam == 2); ++got5; }
    if (pl.place == 3 || pl.place == 7 || pl.place == 19) {
      CHECK(pl.ord2_tam == 1);
      ++got3;
    }
    if (pl.place == 2 || pl.place == 0) CHECK(pl.ord2_tam == 1);
  }
  CHECK(got5 == 1);
  CHECK(got3 == 3);
  CHECK(t20.h0_plus_ord2 == 2);
  CHECK(t20.h0_minus_ord2 == 2);

  CHECK(tamagawa_ord2(4).ord2_product == 4);
  CHECK(tamagawa_ord2(52).ord2_product == 7);
}

TEST_CASE("prediction arithmetic") {
  CHECK(predicted_rhs(4, 0) == 0);
  CHECK(predicted_rhs(20, 0) == 3);
  // the assembled prediction is an identity of the report fields
  for (uint64_t u = 4; u <= 2000; u += 8) {
    if (!is_admissible(u)) continue;
    auto rep = tamagawa_ord2(u);
    for (int s : {0, 1, 3}) {
      CHECK(rep.ord2_product - rep.h0_plus_ord2 - rep.h0_minus_ord2 + s ==
            predicted_rhs(u, s));
    }
  }
}
