#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qp/qform.hpp"
#include "qp/rational.hpp"

namespace qp {

/// A place of Q: the real place or a finite prime.
class Place {
 public:
  static Place real();
  /// Throws DomainError unless p is prime.
  static Place finite(const Integer& p);
  static Place finite(long p) { return finite(Integer(p)); }
  /// "real", "inf" or a decimal prime.
  static Place parse(const std::string& text);

  bool is_real() const { return real_; }
  const Integer& prime() const { return prime_; }
  /// "real" or the prime in decimal.
  std::string label() const;

  friend bool operator==(const Place&, const Place&) = default;
  /// Real place first, then primes ascending.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);

 private:
  bool real_ = true;
  Integer prime_ = 0;
};

/// Element of Q_v^* / (Q_v^*)^2 in canonical form.
///   real: sign;  odd p: (valuation parity, Legendre symbol of the unit part);
///   p = 2: (valuation parity, unit part mod 8).
class SquareClass {
 public:
  SquareClass(Place place, int parity, int unit);

  const Place& place() const { return place_; }
  int parity() const { return parity_; }
  int unit() const { return unit_; }
  bool is_square() const;
  /// Canonical label: "+1"/"-1" (real), "1","u","p","up" (odd p),
  /// "1","-1","2","-2","5","-5","10","-10" (p = 2).
  std::string label() const;
  /// A rational number in this class (u is the least positive nonresidue).
  Rational representative() const;

  friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
  friend bool operator==(const SquareClass&, const SquareClass&) = default;

 private:
  Place place_;
  int parity_;
  int unit_;
};

/// Throws DomainError for a = 0.
SquareClass square_class(const Rational& a, const Place& v);

/// (a, b)_v in {+1, -1}. Throws DomainError if a or b is zero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Product over i < j of (a_i, a_j)_v on the diagonal entries. Throws
/// PreconditionError if an entry is zero.
int hasse_invariant(const Diagonalization& d, const Place& v);
int hasse_invariant(const RatVector& diagonal_entries, const Place& v);

struct LocalInvariants {
  Place place;
  std::size_t rank = 0;
  SquareClass det_class;
  int hasse = 1;
  std::optional<RealSignature> signature;  // real place only
};

/// Invariants of the nondegenerate part of q at v.
LocalInvariants local_invariants(const QuadraticForm& q, const Place& v);

struct WittIndexResult {
  std::size_t index = 0;
  std::size_t anisotropic_dim = 0;
  friend bool operator==(const WittIndexResult&, const WittIndexResult&) = default;
};

/// Witt index over Q_p of a nondegenerate form with the given rank, square
/// class of the determinant and Hasse invariant. Hyperbolic planes are split
/// off while the residual form is isotropic:
///   rank 1 never, rank 2 iff -d is a square, rank 3 iff hasse = (-1,-d),
///   rank 4 iff d is not a square or hasse = (-1,-1), rank >= 5 always;
/// removing H maps (d, hasse) to (-d, hasse * (-1, -d)).
WittIndexResult witt_index_from_invariants(std::size_t rank, const SquareClass& det_class, int hasse);

/// Exact Witt index over the completion. Throws PreconditionError if q is
/// degenerate.
WittIndexResult local_witt_index(const QuadraticForm& q, const Place& v);

struct PlaceWitt {
  Place place;
  LocalInvariants invariants;
  WittIndexResult witt;
};

struct GlobalWittResult {
  WittIndexResult witt;
  /// Real place, 2, and every odd prime dividing a diagonal entry.
  std::vector<PlaceWitt> critical;
  /// Index at every place outside the critical set (the worst such place).
  std::size_t good_place_index = 0;
  /// Rank 2m only: whether (-1)^m det is a square in Q.
  bool signed_det_is_square = false;
};

/// Witt index over Q: the minimum of the local indices (Hasse principle for
/// subforms). Throws PreconditionError if q is degenerate.
GlobalWittResult global_witt_index(const QuadraticForm& q);

/// Odd primes dividing a numerator or denominator of the entries, plus 2.
std::vector<Integer> critical_primes(const RatVector& entries);

struct RHVerdict {
  std::string place;  // place label, or "good" for all places outside S
  std::size_t index = 0;
  bool holds = false;
};

struct RHReport {
  std::size_t r = 0;
  std::vector<RHVerdict> places;
  bool global = false;
};

/// Whether q contains rH at each place and over Q. Throws DomainError unless
/// 0 <= r <= rank/2.
RHReport contains_rH_report(const QuadraticForm& q, std::size_t r);

/// 2-torsion Brauer class of Q as a table of local invariants (+1/-1);
/// places not listed carry +1.
struct BrauerClassTwoTorsion {
  std::map<Place, int> local_signs;
  bool is_zero() const;
  int sign_at(const Place& v) const;
  /// Product of all local signs; +1 by reciprocity.
  int reciprocity_product() const;
};

/// Quaternion class (a, b) over Q.
BrauerClassTwoTorsion quaternion_class(const Rational& a, const Rational& b);

struct AlbertReport {
  QuadraticForm form;             // <-a, -b, ab, c, d, -cd>
  BrauerClassTwoTorsion clifford; // (a, b) + (c, d)
  bool totally_hyperbolic = false;
  /// Over a number field index = exponent for 2-torsion classes, so a rank-6
  /// Albert form is always isotropic.
  bool isotropic = true;
};

/// Albert form of the quaternion pair (a, b), (c, d). Throws DomainError on a
/// zero argument.
AlbertReport clifford_albert(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

/// q5 + <-det(q5)>, a rank-6 form of determinant class -1. Throws
/// PreconditionError unless q5 is nondegenerate of rank 5.
QuadraticForm albert_completion(const QuadraticForm& q5);

}  // namespace qp
