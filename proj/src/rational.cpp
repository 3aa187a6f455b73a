#include "qp/rational.hpp"

#include <cctype>

#include "qp/errors.hpp"

namespace qp {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_decimal_integer(s)) {
    throw InputError("malformed integer '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') {
    throw InputError("denominator must be unsigned in '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer abs_int(const Integer& z) { return z < 0 ? Integer(-z) : z; }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer common_denominator(const RatVector& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

IntVector primitive_integer_vector(const RatVector& v) {
  const Integer d = common_denominator(v);
  IntVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer z = x.get_num() * (d / x.get_den());
    g = gcd(g, z);
    out.push_back(std::move(z));
  }
  if (g > 1) {
    for (auto& z : out) z /= g;
  }
  return out;
}

bool is_perfect_square(const Integer& z) {
  return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_rational_square(const Rational& r) {
  return r >= 0 && is_perfect_square(r.get_num()) && is_perfect_square(r.get_den());
}

Rational rational_sqrt(const Rational& r) {
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  return Rational(n, d);
}

Integer height(const Rational& r) {
  Integer n = abs_int(r.get_num());
  return n > r.get_den() ? n : Integer(r.get_den());
}

}  // namespace qp
