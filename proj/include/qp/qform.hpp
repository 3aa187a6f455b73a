#pragma once

#include <cstddef>
#include <vector>

#include "qp/matrix.hpp"
#include "qp/rational.hpp"

namespace qp {

/// Quadratic form q(x) = x^T G x over Q, stored by its symmetric Gram matrix G
/// (G_ij is the value of the bilinear form on e_i, e_j, so an integral cross
/// coefficient c x_i x_j contributes c/2 to G_ij and G_ji).
class QuadraticForm {
 public:
  QuadraticForm() = default;
  /// Throws DimensionError unless gram is square, symmetric and nonempty.
  explicit QuadraticForm(RatMatrix gram);

  static QuadraticForm diagonal(const RatVector& entries);
  /// Coefficients of x_i x_j for i <= j in row-major order
  /// (x0^2, x0x1, ..., x0x{n-1}, x1^2, ...). Cross terms are halved.
  static QuadraticForm from_monomials(std::size_t dim, const RatVector& coefficients);
  static QuadraticForm zero(std::size_t dim);

  std::size_t dim() const { return gram_.rows(); }
  const RatMatrix& gram() const { return gram_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

  /// Coefficient list in the from_monomials order.
  RatVector monomials() const;

  Rational bilinear(const RatVector& u, const RatVector& v) const;
  Rational determinant() const;

  /// U^T G U.
  QuadraticForm transformed(const RatMatrix& u) const;
  QuadraticForm scaled(const Rational& c) const;

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  RatMatrix gram_;
};

QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b);
QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b);

/// Exact q(v) = v^T G v. Throws DimensionError on a length mismatch.
Rational evaluate(const QuadraticForm& q, const RatVector& v);

/// Congruence diagonalization U^T G U = diag(entries).
struct Diagonalization {
  RatVector entries;
  RatMatrix transform;
  std::size_t rank = 0;

  /// Nonzero entries in order.
  RatVector nonzero_entries() const;
};

/// Symmetric Gaussian elimination. The pivot is the first nonzero diagonal
/// entry of the remaining block; when the whole diagonal vanishes the first
/// nonzero off-diagonal pair (i, j) is folded in via e_i <- e_i + e_j.
/// Radical directions come out as trailing zero entries.
Diagonalization diagonalize(const QuadraticForm& q);

struct RealSignature {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t zeros = 0;
  friend bool operator==(const RealSignature&, const RealSignature&) = default;
};

RealSignature signature(const QuadraticForm& q);
RealSignature signature(const Diagonalization& d);

std::size_t form_rank(const QuadraticForm& q);
bool is_nondegenerate(const QuadraticForm& q);

/// Gram matrix of q on span(basis) in the given basis. Throws DomainError if
/// the basis vectors are dependent, DimensionError on length mismatch.
QuadraticForm restrict(const QuadraticForm& q, const std::vector<RatVector>& basis);

/// Determinant of the nondegenerate part: product of the nonzero diagonal
/// entries of a diagonalization (well defined up to squares).
Rational nondegenerate_determinant(const Diagonalization& d);

}  // namespace qp
