#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "qp/rational.hpp"

namespace qp {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(const RatVector& entries);
  /// Matrix whose columns are the given vectors (all of equal length).
  static RatMatrix from_columns(const std::vector<RatVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatVector column(std::size_t j) const;

  RatMatrix transpose() const;
  bool is_symmetric() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, const RatMatrix& a);
RatVector operator*(const RatMatrix& a, const RatVector& v);

Rational dot(const RatVector& a, const RatVector& b);

/// Exact determinant. Rows are cleared of denominators and the integer matrix
/// is reduced with fraction-free Bareiss elimination. Throws DimensionError
/// for a non-square or empty matrix.
Rational det_exact(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Basis of the right null space {x : m x = 0}, read off the reduced row
/// echelon form (one vector per free column).
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

}  // namespace qp
