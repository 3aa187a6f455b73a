#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qp {

using Integer = mpz_class;
/// Always canonical: gcd(num, den) = 1, den > 0, zero is 0/1.
using Rational = mpq_class;

using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Parses "a", "-a" or "a/b" (decimal). Throws InputError on malformed text or
/// a zero denominator.
Rational parse_rational(std::string_view text);
/// num/den in canonical form (mpq_class(num, den) alone does not reduce).
Rational make_rational(const Integer& num, const Integer& den);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& z) { return sgn(z); }

Integer abs_int(const Integer& z);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Least common multiple of the denominators in v (1 for an empty vector).
Integer common_denominator(const RatVector& v);

/// v scaled by a positive rational to a primitive integer vector (zero stays zero).
IntVector primitive_integer_vector(const RatVector& v);

bool is_perfect_square(const Integer& z);
/// True when r is the square of a rational number.
bool is_rational_square(const Rational& r);
/// Exact square root; caller guarantees is_rational_square(r).
Rational rational_sqrt(const Rational& r);

/// max(|num|, den), the usual naive height of a rational number.
Integer height(const Rational& r);

}  // namespace qp
