#pragma once

// Slow, independent reference computations used only by the test binaries.

#include <optional>
#include <vector>

#include "qp/matrix.hpp"
#include "qp/polynomial.hpp"
#include "qp/rational.hpp"

namespace oracle {

using qp::Integer;
using qp::Rational;
using qp::RatVector;

/// Rational roots by the rational root theorem: every +-a/b with a | p(0)
/// and b | lc(p), checked by evaluation. Zero root handled separately.
std::vector<Rational> rational_roots_by_divisors(const qp::IntPolynomial& p);

/// Cofactor/permutation expansion, n <= 7.
Rational leibniz_det(const qp::RatMatrix& m);

enum class Isotropy { isotropic, anisotropic, undecided };

/// Q_p isotropy of the diagonal form sum a_i x_i^2 by digit-by-digit search
/// for a primitive solution mod p^k. A solution x mod p^j is certified when
/// some coordinate has 2 v(2 a_i x_i) + 1 <= j (Hensel). No primitive
/// solution mod p^j proves anisotropy.
Isotropy hensel_isotropy(const RatVector& diagonal, long p, int k);

/// Escalates k until decided. Throws if k exceeds 14.
bool hensel_isotropic(const RatVector& diagonal, long p);

/// (a, b)_p from isotropy of <a, b, -1>.
int hilbert_by_search(const Rational& a, const Rational& b, long p);

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier, coefficients
/// from x^0 to x^n.
RatVector charpoly_faddeev(const qp::RatMatrix& a);

/// (positives, negatives, zeros) of a symmetric matrix from Descartes' rule
/// on its characteristic polynomial, exact since every root is real.
struct Signs {
  std::size_t pos = 0, neg = 0, zero = 0;
};
Signs signature_by_descartes(const qp::RatMatrix& a);

}  // namespace oracle
