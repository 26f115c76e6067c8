#pragma once

#include <cstdint>

#include "bk/curve.hpp"
#include "bk/real.hpp"

namespace bk {

class precision_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// F(u) = log(4u) - sum_{n>=1} binom(2n,n)^2 (4u)^(-2n) / (2n).
// Summed directly with the geometric tail bound away from u = 1; close to
// u = 1 the series degenerates to ~1/n^2 decay, and the equivalent integral
// int_0^{1/u} ((2/pi)K(k) - 1) dk/k is evaluated instead (AGM + tanh-sinh).
Real regulator_F(const Real& u, Precision prec);
Real regulator_F(const mpq_class& u, Precision prec);

// The two evaluation routes behind regulator_F, exposed so they can be
// cross-checked against each other where both converge.
Real regulator_F_series_route(const Real& u, Precision prec);    // u > 1
Real regulator_F_integral_route(const Real& u, Precision prec);  // u >= 1

// F_1(u) = log(u) - sum_{n>=1} binom(2n,n) u^(-2n) / (2n) = log((u+sqrt(u^2-4))/2)
Real quadratic_F1(long u, Precision prec);

// Gamma(2,x) = (1+x)e^(-x); Gamma(0,x) = E_1(x) by series (x <= 1) or
// continued fraction (x > 1).
Real upper_incomplete_gamma(int s, const Real& x, Precision prec);

struct LValueResult {
  Real value;                    // L(E_u, 2)
  int sign_of_fe = 0;            // detected sign of Lambda(2-s) = eps Lambda(s)
  uint64_t terms_used = 0;
  Real split_consistency_error;   // |L at t=1 - L at t=1.3|, chosen sign
  Real split_error_wrong_sign;    // the same difference for the rejected sign
};

// L(E_u,2) through the smoothed sum
//   Lambda(2;t) = sum_n a_n [ (sqrt(N)/(2 pi n))^2 Gamma(2, 2 pi n t / sqrt(N))
//                             + eps Gamma(0, 2 pi n / (t sqrt(N))) ],
// L = (2 pi)^2 Lambda / N, with eps chosen by agreement between two split
// parameters. Requires u integral with 4 || u.
LValueResult lfun_L2(const CurveFamily& E, Precision prec);

struct QuResult {
  mpq_class q_u;       // L/( (2 pi i)^2 F ) < 0
  mpq_class minus_Nq;  // -N_u q_u > 0, the tabulated quantity
  LValueResult lvalue;
};

QuResult compute_qu(const CurveFamily& E, Precision prec);

// L(chi_d, 1) = -(1/sqrt(d)) sum_{a=1}^{d-1} chi_d(a) log sin(pi a/d),
// for a positive fundamental discriminant d.
Real dirichlet_L1(uint64_t d, Precision prec);

// round( sqrt(d) L(chi_d,1) / (2 F_1(u)) ) for d = u^2-4 squarefree.
long class_number(long u, Precision prec);

}  // namespace bk
