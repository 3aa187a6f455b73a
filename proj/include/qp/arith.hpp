#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qp/rational.hpp"

namespace qp {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

/// Prime factorization of |n| in increasing prime order; n must be nonzero.
/// Trial division to 2^16, then Pollard-Brent rho with probable-prime tests.
std::vector<PrimePower> factorize(const Integer& n);

/// All positive divisors of |n|, ascending.
std::vector<Integer> divisors(const Integer& n);

bool is_probable_prime(const Integer& n);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const Integer& n, const Integer& p);
/// p-adic valuation of a nonzero rational (may be negative).
long valuation(const Rational& r, const Integer& p);

/// Squarefree integer in the rational square class of r (sign kept).
Integer squarefree_kernel(const Rational& r);

/// Legendre symbol (a | p) for an odd prime p, in {-1, 0, 1}.
int legendre(const Integer& a, const Integer& p);

}  // namespace qp
