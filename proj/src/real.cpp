#include "bk/real.hpp"

#include <stdexcept>
#include <vector>

namespace bk {

std::string Real::str(int digits) const {
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  bool neg = !m.empty() && m[0] == '-';
  std::string digs = neg ? m.substr(1) : m;
  std::string out = neg ? "-" : "";
  if (mpfr_zero_p(v_)) return "0";
  out += digs.substr(0, 1) + "." + digs.substr(1) + "e" +
         std::to_string(static_cast<long>(e - 1));
  return out;
}

mpq_class rational_reconstruct(const Real& x, unsigned long max_denominator,
                               const Real& tolerance) {
  if (!mpfr_number_p(x.get()))
    throw std::invalid_argument("rational_reconstruct: non-finite input");
  // exact rational value of the float
  mpq_class xv;
  mpfr_get_q(xv.get_mpq_t(), x.get());
  xv.canonicalize();

  mpz_class p0 = 1, q0 = 0;  // convergent h_{-1}/k_{-1}
  mpz_class p1, q1;          // running convergent
  mpz_class num = xv.get_num(), den = xv.get_den();
  // a_0 = floor(x)
  mpz_class a;
  mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  p1 = a;
  q1 = 1;
  mpz_class rem = num - a * den;
  num = den;
  den = rem;

  auto close_enough = [&](const mpz_class& p, const mpz_class& q) {
    Real approx(mpq_class(p, q), x.prec());
    return abs(x - approx) <= tolerance;
  };

  while (true) {
    if (mpz_cmp_ui(q1.get_mpz_t(), max_denominator) > 0) break;
    if (close_enough(p1, q1)) {
      mpq_class r(p1, q1);
      r.canonicalize();
      return r;
    }
    if (den == 0) break;  // exhausted: x is exactly p1/q1 but tolerance failed
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1; q0 = q1;
    p1 = p2; q1 = q2;
    mpz_class rem2 = num - a * den;
    num = den;
    den = rem2;
  }
  throw std::runtime_error(
      "rational_reconstruct: no convergent within tolerance (insufficient precision?)");
}

}  // namespace bk
