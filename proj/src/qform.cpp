#include "qp/qform.hpp"

#include <utility>

#include "qp/errors.hpp"

namespace qp {

QuadraticForm::QuadraticForm(RatMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() == 0) throw DimensionError("quadratic form of dimension 0");
  if (!gram_.is_symmetric()) throw DimensionError("Gram matrix must be square and symmetric");
}

QuadraticForm QuadraticForm::diagonal(const RatVector& entries) {
  return QuadraticForm(RatMatrix::diagonal(entries));
}

QuadraticForm QuadraticForm::from_monomials(std::size_t dim, const RatVector& coefficients) {
  if (coefficients.size() != dim * (dim + 1) / 2) {
    throw DimensionError("expected " + std::to_string(dim * (dim + 1) / 2) + " monomial coefficients, got " +
                         std::to_string(coefficients.size()));
  }
  RatMatrix g(dim, dim);
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j, ++k) {
      if (i == j) {
        g(i, i) = coefficients[k];
      } else {
        g(i, j) = coefficients[k] / 2;
        g(j, i) = g(i, j);
      }
    }
  }
  return QuadraticForm(std::move(g));
}

QuadraticForm QuadraticForm::zero(std::size_t dim) { return QuadraticForm(RatMatrix(dim, dim)); }

RatVector QuadraticForm::monomials() const {
  RatVector out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) out.push_back(i == j ? gram_(i, i) : Rational(2 * gram_(i, j)));
  return out;
}

Rational QuadraticForm::bilinear(const RatVector& u, const RatVector& v) const {
  if (u.size() != dim() || v.size() != dim()) throw DimensionError("vector length does not match form dimension");
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (u[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < dim(); ++j) row += gram_(i, j) * v[j];
    s += u[i] * row;
  }
  return s;
}

Rational QuadraticForm::determinant() const { return det_exact(gram_); }

QuadraticForm QuadraticForm::transformed(const RatMatrix& u) const {
  if (u.rows() != dim()) throw DimensionError("transform rows must equal the form dimension");
  return QuadraticForm(u.transpose() * gram_ * u);
}

QuadraticForm QuadraticForm::scaled(const Rational& c) const { return QuadraticForm(c * gram_); }

QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.dim() != b.dim()) throw DimensionError("sum of forms of different dimension");
  return QuadraticForm(a.gram() + b.gram());
}

QuadraticForm direct_sum(const QuadraticForm& a, const QuadraticForm& b) {
  const std::size_t n = a.dim() + b.dim();
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) g(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) g(a.dim() + i, a.dim() + j) = b(i, j);
  return QuadraticForm(std::move(g));
}

Rational evaluate(const QuadraticForm& q, const RatVector& v) { return q.bilinear(v, v); }

RatVector Diagonalization::nonzero_entries() const {
  RatVector out;
  for (const auto& e : entries)
    if (e != 0) out.push_back(e);
  return out;
}

Diagonalization diagonalize(const QuadraticForm& q) {
  const std::size_t n = q.dim();
  RatMatrix a = q.gram();
  RatMatrix u = RatMatrix::identity(n);

  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < n; ++k) std::swap(u(k, i), u(k, j));
  };
  // e_i <- e_i + e_j.
  auto add_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
    for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
    for (std::size_t k = 0; k < n; ++k) u(k, i) += u(k, j);
  };

  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, piv) == 0) ++piv;
    if (piv == n) {
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j)
          if (a(i, j) != 0) {
            add_index(i, j);
            piv = i;
            found = true;
          }
      if (!found) break;
    }
    swap_index(k, piv);
    const Rational inv = 1 / a(k, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j) == 0) continue;
      const Rational c = a(k, j) * inv;
      for (std::size_t r = 0; r < n; ++r) a(r, j) -= c * a(r, k);
      for (std::size_t r = 0; r < n; ++r) a(j, r) -= c * a(k, r);
      for (std::size_t r = 0; r < n; ++r) u(r, j) -= c * u(r, k);
    }
  }

  Diagonalization d;
  d.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.entries[i] = a(i, i);
  d.transform = std::move(u);
  d.rank = k;
  return d;
}

RealSignature signature(const Diagonalization& d) {
  RealSignature s;
  for (const auto& e : d.entries) {
    if (e > 0) {
      ++s.positives;
    } else if (e < 0) {
      ++s.negatives;
    } else {
      ++s.zeros;
    }
  }
  return s;
}

RealSignature signature(const QuadraticForm& q) { return signature(diagonalize(q)); }

std::size_t form_rank(const QuadraticForm& q) { return rank(q.gram()); }

bool is_nondegenerate(const QuadraticForm& q) { return q.determinant() != 0; }

QuadraticForm restrict(const QuadraticForm& q, const std::vector<RatVector>& basis) {
  if (basis.empty()) throw DomainError("restriction to an empty basis");
  for (const auto& b : basis)
    if (b.size() != q.dim()) throw DimensionError("basis vector length does not match form dimension");
  const RatMatrix b = RatMatrix::from_columns(basis);
  if (rank(b) != basis.size()) throw DomainError("restriction basis is linearly dependent");
  return q.transformed(b);
}

Rational nondegenerate_determinant(const Diagonalization& d) {
  Rational p = 1;
  for (const auto& e : d.entries)
    if (e != 0) p *= e;
  return p;
}

}  // namespace qp
