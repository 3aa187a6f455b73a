#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qp/localglobal.hpp"
#include "qp/polynomial.hpp"
#include "qp/qform.hpp"

namespace qp {

/// Point (lambda : mu) of P^1(Q) as coprime integers; lambda > 0, or
/// lambda = 0 and mu = 1.
class MemberParameter {
 public:
  MemberParameter() : lambda_(1), mu_(0) {}
  /// Throws DomainError if both are zero.
  MemberParameter(const Rational& lambda, const Rational& mu);
  /// (1 : t), the member f + t g.
  static MemberParameter affine(const Rational& t) { return MemberParameter(1, t); }

  const Integer& lambda() const { return lambda_; }
  const Integer& mu() const { return mu_; }
  Integer height() const;
  /// "lambda:mu".
  std::string label() const;

  friend bool operator==(const MemberParameter&, const MemberParameter&) = default;

 private:
  Integer lambda_;
  Integer mu_;
};

class Pencil {
 public:
  Pencil() = default;
  /// n = dim - 1; det_form computed by interpolation and checked at one more
  /// point. Throws DimensionError on mismatched dimensions.
  Pencil(QuadraticForm f, QuadraticForm g);

  std::size_t n() const { return f_.dim() - 1; }
  const QuadraticForm& f() const { return f_; }
  const QuadraticForm& g() const { return g_; }
  /// Coefficient i multiplies lambda^(n+1-i) mu^i in det(lambda f + mu g).
  const RatVector& det_form() const { return det_; }
  bool det_is_zero() const;
  Rational det_at(const Integer& lambda, const Integer& mu) const;
  Rational det_at(const MemberParameter& t) const { return det_at(t.lambda(), t.mu()); }

  /// Positive integer multiple of det(f + t g) as a polynomial in t.
  IntPolynomial affine_det_poly() const;

 private:
  QuadraticForm f_;
  QuadraticForm g_;
  RatVector det_;
};

Pencil build_pencil(const QuadraticForm& f, const QuadraticForm& g);

/// lambda f + mu g.
QuadraticForm member(const Pencil& p, const MemberParameter& t);

struct SmoothnessReport {
  bool smooth = false;
  /// "smooth", "identically-zero", "degree-drop" (a repeated root at (1:0)
  /// or (0:1)), "repeated-root".
  std::string diagnosis;
};

SmoothnessReport is_smooth(const Pencil& p);

struct RationalStratum {
  MemberParameter parameter;
  int multiplicity = 1;
  std::size_t member_rank = 0;
};

/// Irreducible (or not further split) factor of the determinant carrying
/// irrational roots, as a polynomial in t for the chart (1 : t).
struct IrrationalStratum {
  IntPolynomial factor;
  int multiplicity = 1;
  /// Whether factor is known to be irreducible (Kronecker up to degree 3).
  bool irreducible = false;
  std::vector<IsolatingInterval> real_roots;
};

struct StratificationReport {
  bool identically_zero = false;
  std::vector<RationalStratum> rational;
  std::vector<IrrationalStratum> irrational;
};

StratificationReport stratify(const Pencil& p);

struct SignedMember {
  MemberParameter parameter;
  RealSignature signature;
};

/// Nondegenerate member with |positives - negatives| <= 1. Candidates are
/// f, one rational point in each gap between real roots of det(f + t g),
/// the two unbounded gaps, and g. Throws PreconditionError if p is not
/// smooth and InternalError if no candidate qualifies.
SignedMember real_half_hyperbolic_member(const Pencil& p);

/// Parameter whose determinant is nonzero and not a square in Q_p. Scans by
/// height first, then moves p-adically close to a rational root of the
/// determinant. Throws PreconditionError unless v is finite, the pencil is
/// smooth and the determinant has a rational root on P^1.
MemberParameter padic_nonsquare_det_member(const Pencil& p, const Place& v);

/// All normalized parameters of height <= bound in enumeration order:
/// height ascending; within a height, lambda descending, then |mu| ascending
/// with positive mu first.
std::vector<MemberParameter> parameters_up_to(long bound);

struct LocalWittWitness {
  MemberParameter parameter;
  WittIndexResult witt;
};

struct GlobalWittWitness {
  MemberParameter parameter;
  GlobalWittResult witt;
};

/// First nondegenerate member (in parameters_up_to order) with local Witt
/// index >= r at v. Nullopt means nothing within the bound.
std::optional<LocalWittWitness> member_with_local_witt(const Pencil& p, const Place& v, std::size_t r, long bound);
std::optional<GlobalWittWitness> member_with_global_witt(const Pencil& p, std::size_t r, long bound);

/// y^2 = scale * poly(t) in the chart (t : 1), i.e. sign * det(t f + g) with
/// the square part of the content removed. poly is primitive with positive
/// leading coefficient; scale is a squarefree integer.
struct HyperellipticModel {
  int sign = 1;
  Integer scale = 1;
  IntPolynomial poly;
  int degree = 0;
  int genus = 0;
  bool squarefree = false;
  bool identically_zero = false;
};

/// Model of y^2 = sign * sum_i coeffs[i] t^i.
HyperellipticModel hyperelliptic_model(const RatVector& coeffs, int sign);

HyperellipticModel discriminant_curve(const Pencil& p, int sign);

struct CurvePoint {
  Rational t;
  Rational y;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct CurvePoints {
  /// Affine points with y != 0, both signs of y, ordered by t then y.
  std::vector<CurvePoint> affine;
  /// Rational roots of poly (points with y = 0).
  std::vector<Rational> ramification;
  /// Rational points at infinity of the smooth model: 1 for odd degree,
  /// 2 or 0 for even degree according to whether scale * lc is a square.
  int at_infinity = 0;
};

/// Points with t = a/b, |a|, |b| <= height_bound. Throws PreconditionError
/// unless the model is squarefree.
CurvePoints curve_point_search(const HyperellipticModel& m, long height_bound);

enum class OddDegreeVerdict { yes, no_evidence, unknown };

struct OddDegreeReport {
  OddDegreeVerdict verdict = OddDegreeVerdict::unknown;
  /// "infinity", "rational-root" or "odd-factor"; empty otherwise.
  std::string witness_kind;
  std::optional<Rational> root;
  std::optional<IntPolynomial> factor;
};

/// Yes when the degree is odd, poly has a rational root or an odd factor of
/// degree 3. No-evidence when poly splits completely into even factors of
/// degree <= 2; unknown when a factor of degree >= 4 is left over.
OddDegreeReport odd_degree_point_detector(const HyperellipticModel& m);

std::string to_string(OddDegreeVerdict v);

}  // namespace qp
