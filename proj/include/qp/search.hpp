#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qp/qform.hpp"
#include "qp/rational.hpp"

namespace qp {

/// Primitive integer vector with first nonzero coordinate positive.
struct ProjectivePoint {
  IntVector coords;

  /// Throws DomainError on the zero vector.
  static ProjectivePoint from(const RatVector& v);
  RatVector rational() const;
  Integer height() const;
  std::string to_string() const;
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

/// Element x + y u of Q[u]/(u^2 + b u + c).
struct QuadElement {
  Rational x;
  Rational y;
  friend bool operator==(const QuadElement&, const QuadElement&) = default;
};

class QuadraticAlgebra {
 public:
  QuadraticAlgebra(Rational b, Rational c) : b_(std::move(b)), c_(std::move(c)) {}
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  QuadElement add(const QuadElement& p, const QuadElement& q) const;
  QuadElement mul(const QuadElement& p, const QuadElement& q) const;
  /// Discriminant b^2 - 4c; the algebra is a field iff it is not a square.
  Rational discriminant() const { return b_ * b_ - 4 * c_; }
  bool is_field() const { return !is_rational_square(discriminant()); }

 private:
  Rational b_;
  Rational c_;
};

/// Point v0 + u v1 with u a root of u^2 + b u + c.
struct QuadraticPoint {
  Rational b;
  Rational c;
  RatVector v0;
  RatVector v1;

  /// q(v0 + u v1) computed in Q[u]/(u^2 + b u + c) from the Gram matrix.
  QuadElement evaluate(const QuadraticForm& q) const;
  bool lies_on(const QuadraticForm& q) const { return evaluate(q) == QuadElement{0, 0}; }
};

/// Common zeros of f and g with max |coordinate| <= bound, ascending
/// lexicographic order. Parallel over blocks of leading coordinates.
/// Throws DimensionError on mismatched dimensions.
std::vector<ProjectivePoint> point_search(const QuadraticForm& f, const QuadraticForm& g, long bound);
/// Straightforward serial enumeration with exact rational evaluation.
std::vector<ProjectivePoint> point_search_reference(const QuadraticForm& f, const QuadraticForm& g, long bound);

enum class SearchStatus { found, not_found_within_bound, proven_none };
std::string to_string(SearchStatus s);

struct IsotropicVectorResult {
  SearchStatus status = SearchStatus::not_found_within_bound;
  std::optional<ProjectivePoint> vector;
};

/// Isotropic vector of q. Degenerate q yields a radical vector; otherwise
/// global Witt index 0 certifies that none exists. The search runs a box
/// phase in the given coordinates (height ascending, coordinates ordered
/// 0, 1, -1, 2, -2, ...) and then a meet-in-the-middle search over
/// diagonal coordinates of height <= bound.
IsotropicVectorResult isotropic_vector(const QuadraticForm& q, long bound);

struct IsotropicSubspaceResult {
  SearchStatus status = SearchStatus::not_found_within_bound;
  /// Independent vectors spanning a totally isotropic subspace; primitive.
  std::vector<IntVector> basis;
};

/// Totally isotropic subspace of dimension `dim` built greedily: each new
/// vector is isotropic in the form induced on a complement of the span in
/// its orthogonal. Proven none when dim exceeds the global Witt index plus
/// the radical dimension.
IsotropicSubspaceResult isotropic_subspace(const QuadraticForm& q, std::size_t dim, long bound);
IsotropicSubspaceResult isotropic_plane(const QuadraticForm& q, long bound);

/// Largest totally isotropic subspace the greedy search reaches, up to
/// max_dim vectors.
std::vector<IntVector> greedy_isotropic_subspace(const QuadraticForm& q, std::size_t max_dim, long bound);

struct LinePointResult {
  /// "rational", "quadratic" or "line".
  std::string type;
  std::vector<ProjectivePoint> points;
  std::optional<QuadraticPoint> quadratic;
  /// Set when f and g both vanish on the plane.
  std::vector<IntVector> line;
};

/// Points of {f = g = 0} on the projective line spanned by u and v, where
/// some member of the pencil vanishes identically on span(u, v). Throws
/// PreconditionError if u, v are dependent or no member vanishes there.
LinePointResult quadratic_point_from_line(const QuadraticForm& f, const QuadraticForm& g, const RatVector& u,
                                          const RatVector& v);

}  // namespace qp
