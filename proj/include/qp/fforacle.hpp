#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qp/localglobal.hpp"
#include "qp/pencil.hpp"
#include "qp/qform.hpp"

namespace qp {

/// GF(p^m) for an odd prime p. Elements are integers 0 .. q-1 encoding the
/// residue sum c_i x^i as sum c_i p^i; the constants 0 .. p-1 are the prime
/// field. Arithmetic goes through full tables, so q is capped at 4096.
/// Copies share the tables.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// Throws DomainError unless p is an odd prime, m >= 1 and p^m <= 4096.
  FiniteField(unsigned p, unsigned m = 1);

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned q() const { return q_; }
  /// Monic modulus, coefficients from x^0 to x^m. The least irreducible
  /// one when ordered by the encoding sum c_i p^i of its lower part.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return t_->neg[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  /// Throws DomainError for 0.
  Elem inv(Elem a) const;
  Elem pow(Elem a, unsigned long e) const;
  /// Nonzero squares only; 0 counts as a square.
  bool is_square(Elem a) const { return t_->square[a] != 0; }
  Elem frobenius(Elem a) const { return pow(a, p_); }

  Elem from_integer(const Integer& z) const;
  /// Throws DomainError if p divides the denominator.
  Elem from_rational(const Rational& r) const;
  /// Polynomial coefficients of a, from x^0 to x^(m-1).
  std::vector<unsigned> coefficients(Elem a) const;

 private:
  unsigned p_ = 3;
  unsigned m_ = 1;
  unsigned q_ = 3;
  std::vector<unsigned> modulus_;
  struct Tables {
    std::vector<std::uint16_t> add;
    std::vector<std::uint16_t> mul;
    std::vector<std::uint16_t> neg;
    std::vector<std::uint16_t> inv;
    std::vector<std::uint8_t> square;
  };
  std::shared_ptr<const Tables> t_;
  const std::uint16_t* add_ = nullptr;
  const std::uint16_t* mul_ = nullptr;
};

using FFVector = std::vector<FiniteField::Elem>;

/// Quadratic form over a finite field by its symmetric Gram matrix.
class FFForm {
 public:
  FFForm() = default;
  /// Row-major n x n Gram matrix; throws DimensionError unless symmetric.
  FFForm(std::size_t dim, FFVector gram, const FiniteField& field);
  /// Reduction of a rational form; throws DomainError on a denominator
  /// divisible by p.
  static FFForm reduce(const QuadraticForm& q, const FiniteField& field);
  static FFForm zero(std::size_t dim, const FiniteField& field);

  std::size_t dim() const { return dim_; }
  const FFVector& gram() const { return gram_; }
  FiniteField::Elem operator()(std::size_t i, std::size_t j) const { return gram_[i * dim_ + j]; }

  FiniteField::Elem value(const FiniteField::Elem* x) const;
  FiniteField::Elem bilinear(const FiniteField::Elem* x, const FiniteField::Elem* y) const;
  /// a f + b g, assuming equal dimensions and fields.
  static FFForm combine(FiniteField::Elem a, const FFForm& f, FiniteField::Elem b, const FFForm& g);

  FiniteField::Elem determinant() const;
  std::size_t rank() const;
  bool is_zero() const;
  const FiniteField& field() const { return field_; }

 private:
  std::size_t dim_ = 0;
  FFVector gram_;
  FiniteField field_{3};
};

/// Closed form over F_q: rank 2m+1 gives m; rank 2m gives m if (-1)^m det
/// is a square, else m-1. Throws PreconditionError on a degenerate form.
WittIndexResult ff_witt_index(const FFForm& q);

constexpr unsigned long kDefaultFFBudget = 100'000'000;

/// Number of points of {f = g = 0} in P^(dim-1)(F_q). Parallel over blocks
/// of normalized representatives. Throws BudgetError when q^(dim-1) form
/// evaluations exceed the budget, DimensionError on mismatched forms.
unsigned long count_points(const FFForm& f, const FFForm& g, unsigned long budget = kDefaultFFBudget);
/// All q^dim vectors, zeros counted and divided by q - 1.
unsigned long count_points_reference(const FFForm& f, const FFForm& g, unsigned long budget = kDefaultFFBudget);
/// First point in the enumeration order of normalized representatives.
std::optional<FFVector> find_point(const FFForm& f, const FFForm& g, unsigned long budget = kDefaultFFBudget);

struct SubspaceCount {
  unsigned long count = 0;
  /// Reduced row echelon bases, in enumeration order (only when requested).
  std::vector<std::vector<FFVector>> bases;
  /// Vectors examined.
  unsigned long work = 0;
};

/// Projective r-planes (linear subspaces of dimension r + 1) on which both f
/// and g vanish. Reduced row echelon bases are built one row at a time; each
/// new row solves the linear orthogonality conditions against the earlier
/// rows and must be isotropic for both forms. Parallel over first rows.
/// Throws BudgetError when the vectors examined exceed the budget.
SubspaceCount enumerate_r_planes(const FFForm& f, const FFForm& g, std::size_t r, bool keep_bases = false,
                                 unsigned long budget = kDefaultFFBudget);
/// Every reduced row echelon matrix of the Grassmannian tested directly.
/// Throws BudgetError up front when the number of cells exceeds the budget.
SubspaceCount enumerate_r_planes_reference(const FFForm& f, const FFForm& g, std::size_t r,
                                           unsigned long budget = kDefaultFFBudget);

/// Determinant form of a pencil over F_q, coefficient i at lambda^(d-i) mu^i.
FFVector ff_det_form(const FFForm& f, const FFForm& g);

struct FFReduction {
  FFForm f;
  FFForm g;
  bool smooth = false;
  std::string reason;  // empty when smooth
};

/// Reduces both forms and tests that det(lambda f + mu g) stays a nonzero
/// separable binary form of degree dim. Throws DomainError on bad
/// denominators.
FFReduction reduce_pencil(const Pencil& p, const FiniteField& field);

struct FFMemberWitt {
  FFVector parameter;  // (lambda, mu) normalized
  WittIndexResult witt;
};

struct FFPropositionReport {
  std::size_t n = 0;
  unsigned q = 0;
  bool skipped = false;
  std::string skip_reason;

  std::optional<FFVector> point;
  /// Minimum index the members must reach for this n (0 when no floor).
  std::size_t witt_floor = 0;
  std::vector<FFMemberWitt> members;
  std::size_t min_member_witt = 0;
  bool floor_holds = true;
  /// n = 5 and q > 30.
  bool hyperbolic_required = false;
  std::optional<FFVector> hyperbolic_member;

  /// All applicable checks passed.
  bool ok = false;
};

/// Checks on a pencil over F_q: an F_q-point exists (n >= 4), every
/// nondegenerate member has Witt index at least the floor (2 for n = 4, 5 and
/// 3 for n = 6, 7), and for n = 5, q > 30 some member is totally hyperbolic.
/// A reduction that is not smooth gives a skipped report.
FFPropositionReport verify_ff_propositions(const Pencil& p, const FiniteField& field);

}  // namespace qp
