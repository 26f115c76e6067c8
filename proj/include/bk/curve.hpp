#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "bk/ntheory.hpp"

namespace bk {

class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// y^2 = x (x+1) (x+u^2), u != 0, +-1.
struct CurveFamily {
  mpq_class u;

  explicit CurveFamily(const mpq_class& u_) : u(u_) {
    if (u == 0 || u == 1 || u == -1)
      throw domain_error("CurveFamily: u must avoid {0, 1, -1}");
  }
  explicit CurveFamily(long u_) : CurveFamily(mpq_class(u_)) {}

  mpq_class u_squared_minus_1() const { return u * u - 1; }
  // cubic coefficients of x^3 + a2 x^2 + a4 x
  mpq_class a2() const { return u * u + 1; }
  mpq_class a4() const { return u * u; }

  bool u_is_integer() const { return u.get_den() == 1; }
  long u_long() const { return mpz_get_si(u.get_num().get_mpz_t()); }
};

struct RationalPoint {
  bool at_infinity = true;
  mpq_class x, y;

  RationalPoint() = default;
  RationalPoint(const mpq_class& x_, const mpq_class& y_)
      : at_infinity(false), x(x_), y(y_) {}

  static RationalPoint infinity() { return RationalPoint(); }

  bool operator==(const RationalPoint& o) const {
    if (at_infinity || o.at_infinity) return at_infinity == o.at_infinity;
    return x == o.x && y == o.y;
  }
};

bool on_curve(const CurveFamily& E, const RationalPoint& P);

// chord-tangent doubling on y^2 = x^3 + a2 x^2 + a4 x
RationalPoint double_point(const CurveFamily& E, const RationalPoint& P);

// {O, (0,0), (-1,0), (-u^2,0)}
std::vector<RationalPoint> two_torsion(const CurveFamily& E);

// (u, +-u(u+1)), (-u, +-u(u-1)); all double to (0,0)
std::vector<RationalPoint> rational_four_torsion(const CurveFamily& E);

enum class ReductionKind {
  good,
  split_multiplicative,
  nonsplit_multiplicative,
  good_ordinary_at_2,
};

struct ReductionProfile {
  uint64_t prime = 0;  // 0 encodes the infinite place (unused here)
  ReductionKind kind = ReductionKind::good;
  long local_ap = 0;
};

// Odd primes only; p = 2 is handled by reduction_at_two.
ReductionProfile reduction_type(const CurveFamily& E, uint64_t p);

// Requires u integral with 4 || u; then reduction at 2 is good ordinary
// with a_2 = -1 (four points on the minimal model over F_2).
ReductionProfile reduction_at_two(const CurveFamily& E);

// Product of the odd primes dividing u(u^2-1); requires 4 || u.
uint64_t conductor(const CurveFamily& E);

// a_p at an odd prime of good reduction, by the Legendre-symbol sum
// a_p = -sum_x chi(x(x+1)(x+u^2)).
long ap_good(const CurveFamily& E, uint64_t p);

// Dirichlet coefficients a_1..a_n_max (index 0 unused).
std::vector<long> an_coefficients(const CurveFamily& E, uint64_t n_max);

// Verification helper: the substitution x = 4x', y = 8y' + 4x' turns the
// model into y'^2 + x'y' = x'^3 + (u^2/4)x'^2 + (u^2/16)x' with integral
// coefficients when 4 || u; returns the count of F_2-points of that model.
int minimal_model_f2_points(const CurveFamily& E);

bool four_exactly_divides(const CurveFamily& E);

}  // namespace bk
