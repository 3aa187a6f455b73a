#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qp/rational.hpp"

namespace qp {

/// Degree cap accepted by the root-finding and factoring routines.
inline constexpr int kMaxPolynomialDegree = 16;

/// Dense univariate polynomial over the integers; coefficient i multiplies t^i.
/// The top coefficient is nonzero unless the polynomial is zero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(IntVector coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  /// t - root.
  static IntPolynomial linear_factor(const Rational& root);
  static IntPolynomial monomial(const Integer& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const IntVector& coefficients() const { return coeffs_; }
  Integer coeff(int i) const;
  const Integer& leading() const;

  Rational evaluate(const Rational& x) const;
  Integer evaluate(const Integer& x) const;
  /// Sign of p(x) without forming the rational value.
  int sign_at(const Rational& x) const;

  IntPolynomial derivative() const;
  Integer content() const;
  /// p / content, with positive leading coefficient.
  IntPolynomial primitive_part() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Integer& c, const IntPolynomial& a);

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  IntVector coeffs_;
};

/// Polynomial with the given rational coefficients scaled to a primitive
/// integer polynomial with positive leading coefficient.
IntPolynomial primitive_from_rational(const RatVector& coefficients);

/// lc(b)^(deg a - deg b + 1) * a mod b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
/// a / b when b divides a in Z[t], else nullopt.
std::optional<IntPolynomial> exact_divide(const IntPolynomial& a, const IntPolynomial& b);
/// Primitive gcd with positive leading coefficient (primitive PRS).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
/// Product of the distinct irreducible factors, primitive.
IntPolynomial squarefree_part(const IntPolynomial& p);

/// True iff gcd(p, p') is constant. Throws DomainError on the zero polynomial.
bool is_squarefree(const IntPolynomial& p);

/// All rational roots of p, ascending. Throws DomainError on zero.
std::vector<Rational> rational_roots(const IntPolynomial& p);

/// Open interval (lo, hi) holding exactly one real root; p(lo), p(hi) != 0.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
  friend bool operator==(const IsolatingInterval&, const IsolatingInterval&) = default;
};

/// Sturm sequence of a squarefree polynomial, primitive-part pseudo-remainders.
std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p);
/// Number of sign variations of the sequence at x (zeros skipped).
int sign_variations(const std::vector<IntPolynomial>& seq, const Rational& x);
/// Sign variations at -infinity (negative = true) or +infinity.
int sign_variations_at_infinity(const std::vector<IntPolynomial>& seq, bool negative);

/// Real roots of a squarefree p as disjoint ascending isolating intervals.
/// Throws PreconditionError if p is not squarefree.
std::vector<IsolatingInterval> isolate_real_roots(const IntPolynomial& p);
/// Shrinks an isolating interval of p to width <= max_width.
IsolatingInterval refine(const IntPolynomial& p, IsolatingInterval iv, const Rational& max_width);

/// Rational in [lo, hi] with the least denominator (lo <= hi).
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

/// Some integer factor of p of degree in [1, d], found by Kronecker's method
/// with sample nodes 0, 1, -1, 2; the lowest-degree factor is returned. A
/// sample node that is a root yields the linear factor directly.
std::optional<IntPolynomial> kronecker_factor_upto(const IntPolynomial& p, int d);

}  // namespace qp
