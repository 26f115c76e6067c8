#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bk/curve.hpp"
#include "bk/poly.hpp"

namespace bk {

class irrational_support_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Element a(x) + b(x) y of Q(x)[y]/(y^2 - x(x+1)(x+u^2)).
class FFElement {
 public:
  FFElement() = default;
  FFElement(const CurveFamily& E, RatF a, RatF b)
      : E_(&E), a_(std::move(a)), b_(std::move(b)) {}

  static FFElement from_const(const CurveFamily& E, const mpq_class& c) {
    return FFElement(E, RatF(c), RatF());
  }
  static FFElement x(const CurveFamily& E) {
    return FFElement(E, RatF(Poly::x()), RatF());
  }
  static FFElement y(const CurveFamily& E) {
    return FFElement(E, RatF(), RatF(mpq_class(1)));
  }
  static FFElement from_poly(const CurveFamily& E, const Poly& p) {
    return FFElement(E, RatF(p), RatF());
  }

  const CurveFamily& curve() const { return *E_; }
  const RatF& a() const { return a_; }
  const RatF& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  // x^3 + (1+u^2) x^2 + u^2 x as a polynomial
  Poly cubic() const;

  friend FFElement operator+(const FFElement& p, const FFElement& q);
  friend FFElement operator-(const FFElement& p, const FFElement& q);
  friend FFElement operator*(const FFElement& p, const FFElement& q);
  friend FFElement operator/(const FFElement& p, const FFElement& q);
  FFElement operator-() const { return FFElement(*E_, -a_, -b_); }
  FFElement inverse() const;
  FFElement conj() const { return FFElement(*E_, a_, -b_); }
  RatF norm() const;  // a^2 - b^2 cubic
  bool operator==(const FFElement& o) const { return a_ == o.a_ && b_ == o.b_; }

 private:
  const CurveFamily* E_ = nullptr;
  RatF a_, b_;
};

// The functions of interest, with divisors supported in the eight
// rational 4-torsion-related points.
FFElement ff_v(const CurveFamily& E);                       // (x+u^2)/y
FFElement ff_w(const CurveFamily& E);                       // (u(x+1)-y)/(u(x+1)+y)
FFElement ff_h(const CurveFamily& E);                       // (u(x+1)+y)/(x+u)
FFElement ff_w_signed(const CurveFamily& E, const mpq_class& u);  // parameter sign variants
FFElement ff_h_signed(const CurveFamily& E, const mpq_class& u);

struct SymbolTerm {
  FFElement f, g;
  long multiplicity = 1;
};
using SymbolList = std::vector<SymbolTerm>;

// {v,w} + {-1,h}
SymbolList alpha_symbol(const CurveFamily& E);

struct DivisorEntry {
  RationalPoint point;
  long multiplicity;
};
using Divisor = std::vector<DivisorEntry>;

// O, the three affine 2-torsion points, the four rational 4-torsion points.
std::vector<RationalPoint> reference_points(const CurveFamily& E);

// Order of vanishing at a rational point, by series expansion in the
// uniformizer (y at 2-torsion, x - x_P elsewhere affine, x/y at O).
long valuation_at(const FFElement& f, const RationalPoint& P);

// Value of f * t^(-ord) at P for the same uniformizer convention.
mpq_class leading_value(const FFElement& f, const RationalPoint& P);

// ord and leading coefficient in one expansion
std::pair<long, mpq_class> ord_and_lead(const FFElement& f, const RationalPoint& P);

// Full divisor; support must lie in the reference points, which is enforced
// by degree bookkeeping against the norm-form degrees.
Divisor divisor(const FFElement& f);

// (-1)^(ord f ord g) f^(ord g)/g^(ord f) (P), multiplied over the list.
mpq_class tame_symbol_at(const RationalPoint& P, const SymbolList& s);

// Product over the support of the tame symbols equals 1; support
// completeness is checked through the divisors of all entries.
bool product_formula_check(const SymbolList& s,
                           const std::vector<RationalPoint>& support);

struct AlphaReport {
  struct Entry {
    RationalPoint point;
    mpq_class tame_value;
  };
  std::vector<Entry> entries;
  bool product_formula_ok = false;
  bool all_trivial = false;
};

// Tame symbols of alpha at the reference points plus the product formula.
AlphaReport verify_alpha(const CurveFamily& E);

// Formal element of K_2(Q): sum of symbols {a,b} with multiplicities.
struct K2QTerm {
  mpq_class a, b;
  long multiplicity = 1;
};
using K2QElement = std::vector<K2QTerm>;

// Tame symbol of a K_2(Q) element at an odd prime (value in F_p^*,
// returned as a representative in [1, p-1]).
uint64_t k2q_tame(const K2QElement& e, uint64_t p);
// Real-place symbol: -1 iff an odd number of terms has both entries negative.
int k2q_tame_infinity(const K2QElement& e);
// Odd primes appearing in any entry.
std::vector<uint64_t> k2q_support(const K2QElement& e);
// Equality in K_2(Q) = {+-1} x (+)_p F_p^*, tested through all symbols.
bool k2q_equal(const K2QElement& e1, const K2QElement& e2);

// Explicit pullback of s at P; requires s in the kernel of T_P.
K2QElement pullback_at(const RationalPoint& P, const SymbolList& s);

// X + Y + X^-1 + Y^-1 - 4u = 0 exactly, with X = -vw, Y = v/w.
bool isogeny_identity(const CurveFamily& E);
// Same check with 4u replaced by an arbitrary constant (negative controls).
bool isogeny_identity_with_rhs(const CurveFamily& E, const mpq_class& rhs);

// Compares two symbol lists through tame symbols and pullbacks at all
// reference points; returns the first failing point, if any.
std::optional<RationalPoint> symbol_lists_mismatch(const CurveFamily& E,
                                                   const SymbolList& s1,
                                                   const SymbolList& s2);

// {-vw, v/w} against 2{v,1/w} + 2{-v,v} at all reference points.
bool pullback_symbol_relation(const CurveFamily& E);

// min over primes q | u+1 of ord_2(q-1)
int m_u(uint64_t u);

}  // namespace bk
