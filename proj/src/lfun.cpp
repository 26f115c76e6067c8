#include "bk/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bk {

namespace {

Real pow10_neg(long digits, mpfr_prec_t bits) { return Real::pow10(-digits, bits); }

// complete elliptic integral K(k) = pi / (2 agm(1, sqrt(1-k^2)))
Real elliptic_K(const Real& k, mpfr_prec_t bits) {
  Real one(1L, bits);
  Real kp2 = one - k * k;
  Real a = one, b = sqrt(kp2);
  Real eps = Real(1L, bits);
  mpfr_mul_2si(eps.get(), eps.get(), -(long)bits + 4, MPFR_RNDN);
  for (int i = 0; i < 200; ++i) {
    Real am = (a + b) / 2L;
    Real gm = sqrt(a * b);
    if (abs(a - b) < eps * a) { a = am; break; }
    a = am;
    b = gm;
  }
  return Real::pi(bits) / (a * 2L);
}

// tanh-sinh quadrature of f over (a,b), tolerating endpoint singularities
template <typename F>
Real tanh_sinh(const F& f, const Real& a, const Real& b, mpfr_prec_t bits,
               const Real& tol) {
  Real half = Real(1L, bits) / 2L;
  Real center = (a + b) * half, width = (b - a) * half;
  Real pi_half = Real::pi(bits) * half;
  const double tmax = 6.8;
  Real prev(0L, bits);
  Real sum(0L, bits);
  for (int level = 2; level <= 13; ++level) {
    double h = tmax / std::ldexp(1.0, level);
    long jmax = (long)std::ldexp(1.0, level);
    sum = Real(0L, bits);
    for (long j = -jmax; j <= jmax; ++j) {
      Real t = Real(h, bits) * Real(j, bits);  // exact dyadic node
      Real et = exp(t), emt = Real(1L, bits) / et;
      Real sh = pi_half * (et - emt) * half;  // (pi/2) sinh t
      Real ch = pi_half * (et + emt) * half;  // (pi/2) cosh t
      Real th = tanh(sh);
      Real sech2 = Real(1L, bits) - th * th;
      Real x = center + width * th;
      if (x <= a || x >= b) continue;  // saturated node
      Real wgt = ch * sech2 * Real(h, bits) * width;
      sum += f(x) * wgt;
    }
    if (level > 3 && abs(sum - prev) < tol) return sum;
    prev = sum;
  }
  throw precision_failure("tanh_sinh: did not converge");
}

}  // namespace

Real regulator_F_series_route(const Real& u, Precision prec) {
  mpfr_prec_t bits = prec.bits();
  Real tol = pow10_neg(prec.decimal_digits + 5, bits);
  Real four_u = u * 4L;
  Real r = Real(1L, bits) / (four_u * four_u);  // (4u)^{-2}
  Real q = Real(1L, bits) / (u * u);            // dominating term ratio
  Real one_minus_q = Real(1L, bits) - q;
  Real acc(0L, bits);
  mpz_class binom = 2;  // binom(2n, n) for n = 1
  Real rpow = r;
  for (long n = 1; n < 100000; ++n) {
    Real term = Real(mpz_class(binom * binom), bits) * rpow / (2 * n);
    acc += term;
    // tail < term * q / (1 - q)
    if (term * q < tol * one_minus_q) return log(four_u) - acc;
    binom = binom * (2 * (2 * n + 1)) / (n + 1);
    rpow *= r;
  }
  throw precision_failure("regulator_F: series did not meet its tail bound");
}

Real regulator_F_integral_route(const Real& u, Precision prec) {
  mpfr_prec_t bits = prec.bits();
  Real tol = pow10_neg(prec.decimal_digits + 6, bits);
  Real two_over_pi = Real(2L, bits) / Real::pi(bits);
  auto f = [&](const Real& k) {
    return (two_over_pi * elliptic_K(k, bits) - Real(1L, bits)) / k;
  };
  Real a(0L, bits), b = Real(1L, bits) / u;
  Real integral = tanh_sinh(f, a, b, bits, tol);
  return log(u * 4L) - integral;
}

Real regulator_F(const Real& u, Precision prec) {
  if (u < Real(1L, u.prec())) throw domain_error("regulator_F: u >= 1 required");
  if (u > Real(1.0625, u.prec())) return regulator_F_series_route(u, prec);
  return regulator_F_integral_route(u, prec);
}

Real regulator_F(const mpq_class& u, Precision prec) {
  return regulator_F(Real(u, prec.bits()), prec);
}

Real quadratic_F1(long u, Precision prec) {
  if (u < 5) throw domain_error("quadratic_F1: u >= 5 required");
  mpfr_prec_t bits = prec.bits();
  Real tol = pow10_neg(prec.decimal_digits + 5, bits);
  Real ru(u, bits);
  Real r = Real(1L, bits) / (ru * ru);
  Real q = r * 4L;  // term ratio bound
  Real one_minus_q = Real(1L, bits) - q;
  Real acc(0L, bits);
  mpz_class binom = 2;
  Real rpow = r;
  for (long n = 1; n < 100000; ++n) {
    Real term = Real(binom, bits) * rpow / (2 * n);
    acc += term;
    if (term * q < tol * one_minus_q) return log(ru) - acc;
    binom = binom * (2 * (2 * n + 1)) / (n + 1);
    rpow *= r;
  }
  throw precision_failure("quadratic_F1: series did not meet its tail bound");
}

namespace {

// E_1(x) for 0 < x <= 1: -gamma - log x + sum (-1)^(k+1) x^k / (k k!)
Real e1_series(const Real& x, mpfr_prec_t bits, const Real& tol) {
  Real acc(0L, bits);
  Real term(1L, bits);  // x^k / k!
  for (long k = 1; k < 1000; ++k) {
    term *= x;
    term /= k;
    Real contrib = term / k;
    if (k % 2 == 1)
      acc += contrib;
    else
      acc -= contrib;
    if (contrib < tol) break;
  }
  return acc - Real::euler_gamma(bits) - log(x);
}

// E_1(x) for x > 1: e^{-x} / (x+1 - 1/(x+3 - 4/(x+5 - 9/(x+7 - ...))))
// (modified Lentz); exp_mx = e^{-x} supplied by the caller when available.
Real e1_cf(const Real& x, const Real& exp_mx, mpfr_prec_t bits, const Real& tol_rel) {
  Real b = x + 1;
  Real f = b, C = b, D(0L, bits);
  Real one(1L, bits);
  for (long k = 1; k < 20000; ++k) {
    Real a(-(double)k * (double)k, bits);
    b = b + 2L;
    D = b + a * D;
    if (D.is_zero()) mpfr_set_d(D.get(), 1e-60, MPFR_RNDN);
    C = b + a / C;
    if (C.is_zero()) mpfr_set_d(C.get(), 1e-60, MPFR_RNDN);
    D = one / D;
    Real delta = C * D;
    f *= delta;
    if (abs(delta - one) < tol_rel) return exp_mx / f;
  }
  throw precision_failure("e1_cf: continued fraction did not converge");
}

// E_1 to a relative tolerance chosen from the absolute one: for large x the
// value is ~ e^{-x}/x, so almost no refinement is needed deep in the tail.
Real e1_for_abs_tol(const Real& z, const Real& exp_mz, mpfr_prec_t bits,
                    double abs_tol, double full_rel) {
  double zd = z.to_double();
  double approx = exp_mz.to_double() / zd;  // upper bound for x > 0
  double rel = (approx > 0) ? abs_tol / approx : 1e-3;
  if (rel > 1e-3) rel = 1e-3;
  if (rel < full_rel) rel = full_rel;
  return e1_cf(z, exp_mz, bits, Real(rel, 64));
}

}  // namespace

Real upper_incomplete_gamma(int s, const Real& x, Precision prec) {
  if (x.sign() <= 0) throw domain_error("upper_incomplete_gamma: x > 0 required");
  mpfr_prec_t bits = prec.bits();
  if (s == 2) return (Real(1L, bits) + x) * exp(-x);
  if (s != 0) throw domain_error("upper_incomplete_gamma: s must be 0 or 2");
  Real tol = pow10_neg(prec.decimal_digits + 8, bits);
  if (x <= Real(1L, bits)) return e1_series(x, bits, tol);
  return e1_cf(x, exp(-x), bits, tol);
}

namespace {

struct SumState {
  Real sum;
  bool done = false;
  uint64_t last_n = 0;
};

}  // namespace

LValueResult lfun_L2(const CurveFamily& E, Precision prec) {
  uint64_t N = conductor(E);
  mpfr_prec_t bits = prec.bits();
  const Real pi = Real::pi(bits);
  Real sqrtN = sqrt(Real(mpz_class(N), bits));
  Real c = pi * 2L / sqrtN;  // x_n = c n at t = 1
  const double cd = c.to_double();

  // Absolute target for Lambda: enough for prec-digit L after L = 4pi^2 Lambda/N.
  const double pi2_4 = 4.0 * 3.14159265358979323846 * 3.14159265358979323846;
  const double tol_d =
      std::pow(10.0, -(double)(prec.decimal_digits + 2)) * std::max(1.0, (double)N / pi2_4);

  // decay rates: A(t) ~ e^{-c t n}, B(t) ~ e^{-c n / t}
  const double t2 = 1.3;
  const double digits_needed = -std::log(tol_d);
  auto cutoff = [&](double kappa) {
    double n = digits_needed / kappa;
    for (int i = 0; i < 20; ++i)
      n = (digits_needed + std::log(4.0 * (n + 1.0 / kappa) / kappa)) / kappa;
    return (uint64_t)n + 2;
  };
  uint64_t n_max = std::max(std::max(cutoff(cd), cutoff(cd * t2)),
                            std::max(cutoff(cd / t2), (uint64_t)16));
  n_max += n_max / 4 + 64;

  std::vector<long> a = an_coefficients(E, n_max);

  Real t2r(13L, bits);
  t2r /= 10L;
  // recurrence multipliers for e^{-c n}, e^{-c t2 n}, e^{-c n / t2}
  Real m1 = exp(-c), m2 = exp(-(c * t2r)), m3 = exp(-(c / t2r));
  Real e1v(1L, bits), e2v(1L, bits), e3v(1L, bits);

  Real A1(0L, bits), A2(0L, bits), B1(0L, bits), B2(0L, bits);
  const double full_rel = std::pow(10.0, -(double)(prec.decimal_digits + 9));
  Real tol_series = pow10_neg(prec.decimal_digits + 9, bits);
  Real one(1L, bits);
  uint64_t terms = 0;

  // tail-bound multipliers: sum_{n'>n} 2 n' e^{-kappa(n'-n)} <= bf(n)
  auto make_bf = [](double kappa) {
    double geo = 1.0 / (1.0 - std::exp(-kappa));
    double invk = 1.0 / kappa;
    return [geo, invk](double n) { return 2.0 * (n + invk + 1.0) * geo; };
  };
  auto bf1 = make_bf(cd), bf2 = make_bf(cd * t2), bf3 = make_bf(cd / t2);

  bool doneA1 = false, doneA2 = false, doneB1 = false, doneB2 = false;
  for (uint64_t n = 1; n <= n_max; ++n) {
    // refresh the recurrences periodically to stop rounding drift
    if (n % 1024 == 1) {
      Real rn((long)n, bits);
      e1v = exp(-(c * rn));
      e2v = exp(-(c * t2r * rn));
      e3v = exp(-(c * rn / t2r));
    } else {
      e1v *= m1;
      e2v *= m2;
      e3v *= m3;
    }
    terms = n;
    const long an = a[n];
    const double nd = (double)n;
    const double e1d = e1v.to_double(), e2d = e2v.to_double(), e3d = e3v.to_double();
    Real cn = c * Real((long)n, bits);

    if (!doneA1) {
      double x = cd * nd;
      double wd = (1.0 + x) * e1d / (x * x);
      if (an != 0) A1 += (one + cn) * e1v / (cn * cn) * an;
      if (n > 8 && wd * bf1(nd) < tol_d) doneA1 = true;
    }
    if (!doneA2) {
      double x = cd * nd * t2;
      double wd = (1.0 + x) * e2d / ((cd * nd) * (cd * nd));
      if (an != 0) {
        Real x_r = cn * t2r;
        A2 += (one + x_r) * e2v / (cn * cn) * an;
      }
      if (n > 8 && wd * bf2(nd) < tol_d) doneA2 = true;
    }
    if (!doneB1) {
      double z = cd * nd;
      // E_1(z) < e^{-z}/z for z > 0
      if (n > 8 && z > 1.0 && (e1d / z) * bf1(nd) < tol_d) {
        doneB1 = true;
      } else if (an != 0) {
        Real w = (z <= 1.0) ? e1_series(cn, bits, tol_series)
                            : e1_for_abs_tol(cn, e1v, bits,
                                             tol_d / (2.0 * nd * (nd + 1.0)), full_rel);
        B1 += w * an;
      }
    }
    if (!doneB2) {
      double z = cd * nd / t2;
      if (n > 8 && z > 1.0 && (e3d / z) * bf3(nd) < tol_d) {
        doneB2 = true;
      } else if (an != 0) {
        Real zr = cn / t2r;
        Real w = (z <= 1.0) ? e1_series(zr, bits, tol_series)
                            : e1_for_abs_tol(zr, e3v, bits,
                                             tol_d / (2.0 * nd * (nd + 1.0)), full_rel);
        B2 += w * an;
      }
    }
    if (doneA1 && doneA2 && doneB1 && doneB2) break;
  }
  if (!(doneA1 && doneA2 && doneB1 && doneB2))
    throw precision_failure("lfun_L2: truncation cap reached before tolerance");

  Real scale = pi * pi * 4L / Real(mpz_class(N), bits);
  Real d_plus = abs((A1 + B1) - (A2 + B2)) * scale;
  Real d_minus = abs((A1 - B1) - (A2 - B2)) * scale;

  LValueResult res;
  res.terms_used = terms;
  int eps = (d_plus < d_minus) ? 1 : -1;
  Real d_good = (eps == 1) ? d_plus : d_minus;
  Real d_bad = (eps == 1) ? d_minus : d_plus;
  if (!(d_bad > d_good * 1000L))
    throw precision_failure("lfun_L2: functional-equation sign is ambiguous");
  if (!(d_good < pow10_neg(prec.decimal_digits - 5, bits)))
    throw precision_failure("lfun_L2: split-parameter consistency failed");
  res.sign_of_fe = eps;
  res.split_consistency_error = d_good;
  res.split_error_wrong_sign = d_bad;
  Real lambda = (eps == 1) ? (A1 + B1) : (A1 - B1);
  res.value = lambda * scale;
  return res;
}

QuResult compute_qu(const CurveFamily& E, Precision prec) {
  QuResult r;
  r.lvalue = lfun_L2(E, prec);
  uint64_t N = conductor(E);
  mpfr_prec_t bits = prec.bits();
  Real F = regulator_F(E.u, prec);
  Real pi = Real::pi(bits);
  // -N q_u = N L / (4 pi^2 F)
  Real x = Real(mpz_class(N), bits) * r.lvalue.value / (pi * pi * 4L * F);
  Real tol = pow10_neg(prec.decimal_digits - 8, bits);
  mpq_class nq = rational_reconstruct(x, 1000000, tol);
  if (nq <= 0)
    throw std::runtime_error("compute_qu: -N q_u came out non-positive");
  r.minus_Nq = nq;
  r.q_u = -nq / mpq_class(mpz_class(N));
  return r;
}

Real dirichlet_L1(uint64_t d, Precision prec) {
  if (d <= 5) throw domain_error("dirichlet_L1: d > 5 required");
  bool fundamental = false;
  if (d % 4 == 1) {
    fundamental = squarefree_decompose(d).second == 1;
  } else if (d % 4 == 0) {
    uint64_t m = d / 4;
    fundamental =
        (m % 4 == 2 || m % 4 == 3) && squarefree_decompose(m).second == 1;
  }
  if (!fundamental)
    throw domain_error("dirichlet_L1: d is not a fundamental discriminant");

  mpfr_prec_t bits = prec.bits();
  Real pi = Real::pi(bits);
  Real pid = pi / Real(mpz_class(d), bits);
  Real acc(0L, bits);
  long chi_sum = 0;
  for (uint64_t aa = 1; aa < d; ++aa) {
    int chi = kronecker((long long)aa, (long long)d);
    if (chi == 0) continue;
    chi_sum += chi;
    Real term = log(sin(pid * Real((long)aa, bits)));
    if (chi == 1)
      acc += term;
    else
      acc -= term;
  }
  if (chi_sum != 0)
    throw std::runtime_error("dirichlet_L1: character does not sum to zero");
  return -acc / sqrt(Real(mpz_class(d), bits));
}

long class_number(long u, Precision prec) {
  if (u < 5) throw domain_error("class_number: u >= 5 required");
  uint64_t d = (uint64_t)u * (uint64_t)u - 4;
  if (squarefree_decompose(d).second != 1)
    throw domain_error("class_number: u^2 - 4 is not squarefree");
  mpfr_prec_t bits = prec.bits();
  Real L1 = dirichlet_L1(d, prec);
  Real F1 = quadratic_F1(u, prec);
  Real h = sqrt(Real(mpz_class(d), bits)) * L1 / (F1 * 2L);
  Real rounded = round_nearest(h);
  if (!(abs(h - rounded) < Real(1e-6, bits)))
    throw precision_failure("class_number: value is not close to an integer");
  long res = rounded.to_long();
  if (res <= 0) throw std::runtime_error("class_number: non-positive result");
  return res;
}

}  // namespace bk
