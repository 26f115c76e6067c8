#include "bk/bktable.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "bk/funcfield.hpp"

namespace bk {

RatFactors rat_factors(const mpq_class& q) {
  if (q <= 0) throw std::invalid_argument("rat_factors: positive rational expected");
  mpz_class num = q.get_num(), den = q.get_den();
  if (!num.fits_ulong_p() || !den.fits_ulong_p())
    throw std::invalid_argument("rat_factors: out of 64-bit range");
  RatFactors out;
  for (auto& [p, e] : factorize(mpz_get_ui(num.get_mpz_t())).factors)
    out.emplace_back(p, e);
  for (auto& [p, e] : factorize(mpz_get_ui(den.get_mpz_t())).factors)
    out.emplace_back(p, -e);
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_factors(const RatFactors& f) {
  if (f.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += "·";
    s += std::to_string(f[i].first);
    if (f[i].second != 1) s += "^" + std::to_string(f[i].second);
  }
  return s;
}

namespace {

BkRow build_row_once(uint64_t u, Precision prec) {
  require_admissible(u);
  BkRow row;
  row.u = u;
  row.fact_u4 = factorize(u / 4);
  row.fact_um1 = factorize(u - 1);
  row.fact_up1 = factorize(u + 1);
  // u(u^2-1)/4 squarefree iff all three coprime parts are
  auto sqfree = [](const Factorization& f) {
    for (auto& [p, e] : f.factors)
      if (e > 1) return false;
    return true;
  };
  row.natural_mark =
      !(sqfree(row.fact_u4) && sqfree(row.fact_um1) && sqfree(row.fact_up1));

  CurveFamily E(mpq_class((long)u));
  row.conductor = conductor(E);

  QuResult qu = compute_qu(E, prec);
  row.minus_Nq = qu.minus_Nq;
  row.minus_Nq_fact = rat_factors(qu.minus_Nq);
  row.sign_of_fe = qu.lvalue.sign_of_fe;
  row.terms_used = qu.lvalue.terms_used;
  row.ord2_q = ord2_q(qu.q_u);

  OmegaCounts cu = omega_counts(u);
  long omega_u2m1 =
      omega_counts(row.fact_um1).omega + omega_counts(row.fact_up1).omega;
  row.shat_minus_iota =
      row.ord2_q - cu.omega3 - 2L * cu.omega1 - omega_u2m1 + 2;

  row.s_prime = s_prime_u(u);
  row.m_minus_1 = m_u(u) - 1;
  if (row.shat_minus_iota == row.s_prime)
    row.flag = (row.m_minus_1 == 0) ? RowFlag::zero_star : RowFlag::one_plus;
  return row;
}

}  // namespace

BkRow build_row(uint64_t u, Precision prec) {
  try {
    return build_row_once(u, prec);
  } catch (const precision_failure&) {
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).find("rational_reconstruct") == std::string::npos)
      throw;
  }
  Precision higher{prec.decimal_digits + 10};
  return build_row_once(u, higher);
}

VuResult v_u(uint64_t u) {
  if (u < 4 || u % 8 != 4) throw hypothesis_error("v_u: 4||u fails");
  require_admissible(u);
  VuResult res;
  res.u = u;
  OmegaCounts cu = omega_counts(u);
  long base = 2L * cu.omega1 + cu.omega3 +
              (long)omega_counts(u - 1).omega + omega_counts(u + 1).omega;
  int sp = s_prime_u(u);
  res.lower_bound = base + sp;
  if (sp == 0) res.value = base;  // s' = 0 forces s = 0

  bool squarefree = squarefree_decompose(u / 4).second == 1 &&
                    squarefree_decompose(u - 1).second == 1 &&
                    squarefree_decompose(u + 1).second == 1;
  if (squarefree) {
    if (u == 4)
      res.classification = VuClass::u_eq_4;
    else if (u == 12)
      res.classification = VuClass::u_eq_12;
    else if (is_prime_u64(u - 1) && is_prime_u64(u + 1) && u % 12 == 0 &&
             is_prime_u64(u / 12) && (u / 12) % 4 == 3)
      res.classification = VuClass::twelve_p_twin_prime;
    else
      res.classification = VuClass::other;
  }
  return res;
}

ScanResult scan(uint64_t from, uint64_t to, Precision prec, bool long_run,
                int workers) {
  ScanResult result;
  std::vector<uint64_t> todo;
  if (from < 4) from = 4;
  uint64_t first = from + ((4 + 8 - from % 8) % 8);
  for (uint64_t u = first; u <= to; u += 8) {
    if (!is_admissible(u)) {
      result.skipped.emplace_back(u, "hypothesis fails (odd exponent condition)");
      continue;
    }
    CurveFamily E(mpq_class((long)u));
    if (!long_run && conductor(E) > 1000000000ull) {
      result.skipped.emplace_back(u, "conductor above 10^9 (needs long-run)");
      continue;
    }
    todo.push_back(u);
  }

  int nw = workers > 0 ? workers : (int)std::thread::hardware_concurrency();
  if (nw < 1) nw = 1;
  if (!todo.empty()) nw = std::min<int>(nw, (int)todo.size());

  std::vector<std::optional<BkRow>> rows(todo.size());
  std::vector<std::pair<uint64_t, std::string>> errors;
  std::mutex err_mu;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= todo.size()) break;
      try {
        rows[i] = build_row(todo[i], prec);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(err_mu);
        errors.emplace_back(todo[i], e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < nw; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : rows)
    if (r) result.rows.push_back(*r);
  for (auto& e : errors) result.skipped.push_back(e);
  std::sort(result.rows.begin(), result.rows.end(),
            [](const BkRow& a, const BkRow& b) { return a.u < b.u; });
  return result;
}

}  // namespace bk
