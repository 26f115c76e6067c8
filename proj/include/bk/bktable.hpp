#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bk/lfun.hpp"
#include "bk/selmer.hpp"

namespace bk {

// factorization that may carry negative exponents (denominator primes)
using RatFactors = std::vector<std::pair<uint64_t, int>>;

RatFactors rat_factors(const mpq_class& q);
std::string format_factors(const RatFactors& f);

enum class RowFlag { none, zero_star, one_plus };

struct BkRow {
  uint64_t u = 0;
  Factorization fact_u4, fact_um1, fact_up1;
  bool natural_mark = false;  // u(u^2-1)/4 not squarefree
  uint64_t conductor = 0;
  mpq_class minus_Nq;      // -N_u q_u > 0
  RatFactors minus_Nq_fact;
  int ord2_q = 0;
  long shat_minus_iota = 0;  // ord2(q) - omega3(u) - 2 omega1(u) - omega(u^2-1) + 2
  int s_prime = 0;
  int m_minus_1 = 0;
  RowFlag flag = RowFlag::none;
  int sign_of_fe = 0;
  uint64_t terms_used = 0;
};

// One fully assembled row. Raises precision by 10 digits and retries once
// if the rational reconstruction fails.
BkRow build_row(uint64_t u, Precision prec);

enum class VuClass { u_eq_4, u_eq_12, twelve_p_twin_prime, other };

struct VuResult {
  uint64_t u = 0;
  std::optional<long> value;             // 2w1+w3+w(u^2-1)+s_u when s_u is known
  long lower_bound = 0;                  // with s_u >= s'_u
  std::optional<VuClass> classification; // only when (u/4)(u^2-1) squarefree
};

VuResult v_u(uint64_t u);

struct ScanResult {
  std::vector<BkRow> rows;
  std::vector<std::pair<uint64_t, std::string>> skipped;  // u -> reason
};

// Rows for all admissible u in [from, to]; inadmissible u are logged, rows
// with conductor above 10^9 are gated behind long_run. Work is distributed
// over `workers` threads (0 = hardware concurrency).
ScanResult scan(uint64_t from, uint64_t to, Precision prec, bool long_run = false,
                int workers = 0);

}  // namespace bk
