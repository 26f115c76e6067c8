// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <golden-dir>

#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bk/funcfield.hpp"
#include "bk/golden.hpp"

using namespace bk;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what,
            const std::string& detail = "") {
  printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
         what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  fflush(stdout);
  if (!ok) ++failures;
}

int env_workers() {
  const char* w = std::getenv("BK2_WORKERS");
  return w ? std::atoi(w) : 0;
}

std::vector<GoldenRow> load_tables_123(const std::string& dir) {
  std::vector<GoldenRow> all;
  for (const char* f : {"/table1.txt", "/table2.txt", "/table3.txt"}) {
    auto rows = parse_golden_file(dir + f);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

// ---- criterion 3 oracle: accelerated alternating sum ------------------
// sum_{k>=0} (-1)^k / (2k+1)^2 with Chebyshev-weighted acceleration
// (the terms are Hausdorff moments, so the error drops like (3+sqrt(8))^-n)
Real catalan_type_sum(mpfr_prec_t bits) {
  const long n = 80;
  Real d = pow_si(Real(3L, bits) + sqrt(Real(8L, bits)), n);
  d = (d + Real(1L, bits) / d) / 2L;
  Real b(-1L, bits), c = -d, s(0L, bits);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    Real ak = Real(1L, bits) / Real((2 * k + 1) * (2 * k + 1), bits);
    s += c * ak;
    b *= Real(2L * (k + n), bits) * Real(2L * (k - n), bits);
    b /= Real(2L * k + 1, bits) * Real(k + 1, bits);
  }
  return s / d;
}

// ---- criterion 9 oracle: cycles of reduced indefinite forms -----------
long isqrt_u64(uint64_t d) {
  long r = (long)std::sqrt((double)d);
  while ((uint64_t)(r + 1) * (r + 1) <= d) ++r;
  while ((uint64_t)r * r > d) --r;
  return r;
}

struct Form {
  long a, b, c;
  bool operator<(const Form& o) const {
    return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
  }
};

bool is_reduced(long a, long b, long d) {
  if (b <= 0 || (uint64_t)b * b >= (uint64_t)d) return false;
  long aa = std::abs(a);
  // 2|a| > sqrt(d) - b  and  2|a| < sqrt(d) + b
  if ((2 * aa + b) * (2 * aa + b) <= d) return false;
  if (2 * aa > b && (2 * aa - b) * (2 * aa - b) >= d) return false;
  return true;
}

Form rho(const Form& f, long d, long isq) {
  long m = 2 * std::abs(f.c);
  long r = ((-f.b) % m + m) % m;
  long k = (isq - r) / m;
  if (isq - r < 0 && (isq - r) % m != 0) --k;  // floor division
  long b2 = r + m * k;
  long c2 = (long)(((long long)b2 * b2 - d) / (4 * (long long)f.c));
  return {f.c, b2, c2};
}

long class_number_forms_oracle(uint64_t d) {
  long isq = isqrt_u64(d);
  std::set<Form> forms;
  for (long b = 1; b <= isq; ++b) {
    if (((long)d - b * b) % 4 != 0) continue;
    long ac = ((long)d - b * b) / 4;  // a c = -ac < 0
    for (long aa = 1; aa <= ac; ++aa) {
      if (ac % aa != 0) continue;
      long cc = ac / aa;
      if (is_reduced(aa, b, (long)d)) {
        forms.insert({aa, b, -cc});
        forms.insert({-aa, b, cc});
      }
    }
  }
  // count rho-cycles
  std::set<Form> seen;
  long cycles = 0;
  for (const Form& f : forms) {
    if (seen.count(f)) continue;
    ++cycles;
    Form g = f;
    do {
      seen.insert(g);
      g = rho(g, (long)d, isq);
    } while (!(g.a == f.a && g.b == f.b && g.c == f.c));
  }
  if (cycles % 2 != 0) throw std::runtime_error("forms oracle: odd cycle count");
  return cycles / 2;
}

// -----------------------------------------------------------------------

void criterion1(const std::string& dir) {
  Precision prec{25};
  std::vector<uint64_t> us = {4,  12,  20,  28,  52,  60,  68, 84,
                              92, 108, 124, 132, 140, 156, 164};
  std::map<uint64_t, GoldenRow> gold;
  for (auto& g : parse_golden_file(dir + "/table1.txt")) gold[g.u] = g;
  std::string detail;
  bool ok = true;
  for (uint64_t u : us) {
    BkRow r = build_row(u, prec);
    GoldenRow c = render_golden(r);
    const GoldenRow& g = gold.at(u);
    if (c.minus_Nq != g.minus_Nq || c.s_prime != g.s_prime ||
        c.m_minus_1 != g.m_minus_1 || c.shat_minus_iota != g.shat_minus_iota ||
        c.flag != g.flag) {
      ok = false;
      detail += " u=" + std::to_string(u);
    }
  }
  report(1, ok, "Table-1 regression, 15 rows, exact after reconstruction", detail);
}

void criterion2(const std::string& dir) {
  Precision prec{25};
  size_t total = 0;
  std::vector<std::string> diffs;
  const std::tuple<const char*, uint64_t, uint64_t> parts[] = {
      {"/table1.txt", 4, 348}, {"/table2.txt", 356, 732}, {"/table3.txt", 740, 1092}};
  for (auto& [file, lo, hi] : parts) {
    ScanResult res = scan(lo, hi, prec, false, env_workers());
    auto d = golden_compare(res.rows, parse_golden_file(dir + file));
    diffs.insert(diffs.end(), d.begin(), d.end());
    total += res.rows.size();
  }
  std::string detail = std::to_string(total) + " rows";
  for (size_t i = 0; i < diffs.size() && i < 4; ++i) detail += "; " + diffs[i];
  report(2, diffs.empty(), "full tables, u <= 1100, golden diff empty", detail);
}

void criterion3() {
  Precision prec{25};
  mpfr_prec_t bits = prec.bits();
  Real f1 = regulator_F(mpq_class(1), prec);
  Real target = catalan_type_sum(bits) * 4L / Real::pi(bits);
  bool ok = abs(f1 - target) < Real::pow10(-20, bits);

  bool mono = true;
  Real prev = regulator_F(mpq_class(3, 2), prec);
  for (long i = 4; i <= 200; ++i) {  // u = 2, 2.5, ..., 100
    Real cur = regulator_F(mpq_class(i, 2), prec);
    if (!(cur > prev)) mono = false;
    prev = cur;
  }
  report(3, ok && mono, "F(1) equals the alternating-sum value to 1e-20; F increasing",
         "|diff| = " + abs(f1 - target).str(3));
}

void criterion4() {
  Precision prec{25};
  mpfr_prec_t bits = prec.bits();
  Real F4 = regulator_F(mpq_class(4), prec);  // series path
  LValueResult L = lfun_L2(CurveFamily(4), prec);
  Real pi = Real::pi(bits);
  Real lhs = F4 * pi * pi * 4L / Real(165L, bits);
  bool ok = abs(lhs - L.value) < Real::pow10(-20, bits);
  report(4, ok, "F(4)*4pi^2/165 = L(E_4,2) across the two computation paths",
         "|diff| = " + abs(lhs - L.value).str(3));
}

void criterion5(const std::string& dir) {
  using V = std::vector<std::pair<uint64_t, uint64_t>>;
  auto pairs_of = [](uint64_t u) {
    V v;
    for (auto& p : selmer_pairs(u)) v.emplace_back(p.D, p.D_prime);
    return v;
  };
  bool ok = pairs_of(4) == V{{1, 1}} &&
            pairs_of(292) == V{{1, 1}, {1, 73}, {97, 1}, {97, 73}} &&
            pairs_of(1020) == V{{1, 1}, {1, 17}} &&
            pairs_of(1060) == V{{1, 1}, {353, 265}};
  std::string detail = ok ? "" : "worked examples mismatch";

  auto gold = load_tables_123(dir);
  for (auto& g : gold) {
    if (s_prime_u(g.u) != g.s_prime) {
      ok = false;
      detail += " s'(" + std::to_string(g.u) + ")";
    }
  }
  for (uint64_t u = 4; u <= 5000; u += 8) {
    if (!is_admissible(u)) continue;
    auto pairs = selmer_pairs(u);  // asserts (1,1) and power-of-2 internally
    auto sets = selmer_sets(u);
    for (auto& pr : pairs) {  // conditions hold literally
      bool lit = pr.D % 8 == 1;
      for (uint64_t p : sets.S)
        lit = lit && kronecker((long long)(pr.D_prime % p), (long long)p) == 1;
      for (uint64_t p : sets.S_prime) {
        long long a = (long long)(pr.D % p);
        if (pr.D_prime % p == 0) a = (2 * a) % (long long)p;
        lit = lit && kronecker(a, (long long)p) == 1;
      }
      if (!lit) {
        ok = false;
        detail += " literal-condition u=" + std::to_string(u);
        break;
      }
    }
  }
  report(5, ok, "Selmer enumeration: worked examples, table column, u <= 5000", detail);
}

void criterion6() {
  bool ok = true;
  std::string detail;
  for (long u = -100; u <= 100; ++u) {
    if (u == -1 || u == 0 || u == 1) continue;
    CurveFamily E(u);
    auto rep = verify_alpha(E);
    if (!rep.all_trivial || !rep.product_formula_ok) {
      ok = false;
      detail += " alpha(u=" + std::to_string(u) + ")";
    }
  }
  // divisors, pullback table and the parameter-sign identities at u = 4,12,20
  for (long u : {4L, 12L, 20L}) {
    CurveFamily E(u);
    mpq_class U(u);
    auto dv = divisor(ff_v(E));
    auto dw = divisor(ff_w(E));
    auto dh = divisor(ff_h(E));
    Poly ux1(std::vector<mpq_class>{U, U});
    auto dyp = divisor(FFElement::y(E) + FFElement::from_poly(E, ux1));
    auto dym = divisor(FFElement::y(E) - FFElement::from_poly(E, ux1));
    auto dxu = divisor(FFElement::from_poly(E, Poly(std::vector<mpq_class>{U, 1})));
    auto has = [](const Divisor& d, const RationalPoint& P, long m) {
      for (auto& e : d)
        if (e.point == P && e.multiplicity == m) return true;
      return false;
    };
    bool okd = dv.size() == 4 && has(dv, RationalPoint(-U * U, 0), 1) &&
               has(dv, RationalPoint(0, 0), -1) && has(dv, RationalPoint(-1, 0), -1) &&
               has(dv, RationalPoint::infinity(), 1);
    okd = okd && dw.size() == 4 && has(dw, RationalPoint(-U, -U * U + U), 1) &&
          has(dw, RationalPoint(U, U * U + U), 1) &&
          has(dw, RationalPoint(-U, U * U - U), -1) &&
          has(dw, RationalPoint(U, -U * U - U), -1);
    okd = okd && dh.size() == 4 && has(dh, RationalPoint(-1, 0), 1) &&
          has(dh, RationalPoint(U, -U * U - U), 1) &&
          has(dh, RationalPoint(-U, -U * U + U), -1) &&
          has(dh, RationalPoint::infinity(), -1);
    okd = okd && dyp.size() == 4 && has(dyp, RationalPoint(-U, U * U - U), 1) &&
          has(dyp, RationalPoint(-1, 0), 1) && has(dyp, RationalPoint(U, -U * U - U), 1) &&
          has(dyp, RationalPoint::infinity(), -3);
    okd = okd && dym.size() == 4 && has(dym, RationalPoint(-U, -U * U + U), 1) &&
          has(dym, RationalPoint(-1, 0), 1) && has(dym, RationalPoint(U, U * U + U), 1) &&
          has(dym, RationalPoint::infinity(), -3);
    okd = okd && dxu.size() == 3 && has(dxu, RationalPoint(-U, -U * U + U), 1) &&
          has(dxu, RationalPoint(-U, U * U - U), 1) &&
          has(dxu, RationalPoint::infinity(), -2);
    if (!okd) {
      ok = false;
      detail += " divisors(u=" + std::to_string(u) + ")";
    }

    RationalPoint P(0, 0), Q(-U * U, 0);
    SymbolList alpha = alpha_symbol(E);
    FFElement minus1 = FFElement::from_const(E, -1);
    SymbolList m1x = {{minus1, FFElement::x(E), 1}};
    SymbolList m1x1 = {
        {minus1, FFElement::from_poly(E, Poly(std::vector<mpq_class>{1, 1})), 1}};
    bool okp = k2q_equal(pullback_at(P, alpha), {}) &&
               k2q_equal(pullback_at(Q, alpha), {{mpq_class(-1), 1 + U, 1}}) &&
               k2q_equal(pullback_at(P, m1x), {}) &&
               k2q_equal(pullback_at(Q, m1x), {{mpq_class(-1), mpq_class(-1), 1}}) &&
               k2q_equal(pullback_at(P, m1x1), {}) &&
               k2q_equal(pullback_at(Q, m1x1), {{mpq_class(-1), 1 - U * U, 1}});
    if (!okp) {
      ok = false;
      detail += " pullbacks(u=" + std::to_string(u) + ")";
    }

    FFElement wp = ff_w_signed(E, U), wm = ff_w_signed(E, -U);
    FFElement hp = ff_h_signed(E, U), hm = ff_h_signed(E, -U);
    Poly x1(std::vector<mpq_class>{1, 1});
    bool oks = (wp * wm) == FFElement::from_const(E, 1) &&
               (hp * hm) == FFElement::from_poly(E, x1);
    if (!oks) {
      ok = false;
      detail += " sign-identities(u=" + std::to_string(u) + ")";
    }
  }
  report(6, ok, "tame symbols, divisors, pullback table, sign identities", detail);
}

void criterion7() {
  bool ok = true;
  for (long u : {4L, 12L, 20L, 52L}) {
    CurveFamily E(u);
    if (!isogeny_identity(E)) ok = false;
    if (isogeny_identity_with_rhs(E, 4 * E.u + 1)) ok = false;
  }
  report(7, ok, "X+Y+1/X+1/Y = 4u exactly; perturbed identity fails");
}

void criterion8(const std::string& dir) {
  bool ok = true;
  std::string detail;
  for (auto& g : load_tables_123(dir)) {
    uint64_t u = g.u;
    OmegaCounts cu = omega_counts(u);
    long omega = omega_counts(u - 1).omega + omega_counts(u + 1).omega;
    auto rep = tamagawa_ord2(u);
    if (rep.ord2_product != 2 * cu.omega1 + cu.omega3 + omega + 2) {
      ok = false;
      detail += " tam(u=" + std::to_string(u) + ")";
    }
    // read ord2(q_u) off the golden -N q factorisation and apply the
    // difference formula; it must reproduce the golden column
    int ord2 = 0;
    std::string f = g.minus_Nq;
    if (f.rfind("2^", 0) == 0)
      ord2 = std::atoi(f.c_str() + 2);
    else if (f == "2" || f.rfind("2·", 0) == 0)
      ord2 = 1;
    long shat = ord2 - cu.omega3 - 2L * cu.omega1 - omega + 2;
    if (shat != g.shat_minus_iota) {
      ok = false;
      detail += " sudiff(u=" + std::to_string(u) + ")";
    }
  }
  report(8, ok, "Tamagawa assembly identity across all table rows", detail);
}

void criterion9() {
  Precision prec{25};
  mpfr_prec_t bits = prec.bits();
  bool ok = class_number(105, prec) == 7;
  std::string detail = ok ? "" : "u=105";
  for (long u = 5; u <= 60; u += 2) {
    uint64_t d = (uint64_t)u * u - 4;
    if (squarefree_decompose(d).second != 1) continue;
    long h = class_number(u, prec);
    long oracle = class_number_forms_oracle(d);
    if (h != oracle) {
      ok = false;
      detail += " u=" + std::to_string(u) + "(" + std::to_string(h) + " vs " +
                std::to_string(oracle) + ")";
    }
  }
  for (long u = 5; u <= 200; ++u) {
    uint64_t d = (uint64_t)u * u - 4;
    if (squarefree_decompose(d).second != 1) continue;
    Real ru(u, bits);
    Real target = log((ru + sqrt(ru * ru - Real(4L, bits))) / 2L);
    if (!(abs(quadratic_F1(u, prec) - target) < Real::pow10(-20, bits))) {
      ok = false;
      detail += " F1(" + std::to_string(u) + ")";
    }
  }
  report(9, ok, "class numbers vs the reduced-forms oracle; F1 closed form", detail);
}

void criterion10() {
  std::vector<uint64_t> val4;
  bool ok = true;
  std::string detail;
  for (uint64_t u = 4; u <= 25000; u += 8) {
    if (!is_admissible(u)) continue;
    if (squarefree_decompose(u / 4).second != 1 ||
        squarefree_decompose(u - 1).second != 1 ||
        squarefree_decompose(u + 1).second != 1)
      continue;
    VuResult r = v_u(u);
    if (r.value) {
      if (*r.value == 2 && u != 4) { ok = false; detail += " v=2@" + std::to_string(u); }
      if (*r.value == 3 && u != 12) { ok = false; detail += " v=3@" + std::to_string(u); }
      if (*r.value == 4) val4.push_back(u);
    } else if (r.lower_bound <= 4) {
      ok = false;
      detail += " unknown-with-low-bound@" + std::to_string(u);
    }
  }
  std::vector<uint64_t> expected = {228,  1668,  3252,  4548,  8292,  8628,
                                    9012, 10068, 12612, 17988, 18132, 19428};
  if (val4 != expected) {
    ok = false;
    detail += " value-4 set mismatch (" + std::to_string(val4.size()) + " found)";
  }
  report(10, ok, "V_u classification exhaustive to u = 25000", detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "data/golden";
  criterion1(dir);
  criterion3();
  criterion4();
  criterion5(dir);
  criterion6();
  criterion7();
  criterion8(dir);
  criterion9();
  criterion10();
  criterion2(dir);  // the long one last
  if (failures) printf("%d criterion(s) failed\n", failures);
  else printf("all acceptance criteria passed\n");
  return failures ? 1 : 0;
}
