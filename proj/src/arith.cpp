#include "qp/arith.hpp"

#include <algorithm>

#include "qp/errors.hpp"

namespace qp {

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor of the odd
// composite n.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto step = [&](Integer& v) {
      v = v * v + c;
      v %= n;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y);
          Integer d = x - y;
          q = (q * abs_int(d)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        g = gcd(abs_int(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    primes.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    factor_into(r, primes);
    factor_into(r, primes);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(Integer(n / d), primes);
}

}  // namespace

std::vector<PrimePower> factorize(const Integer& n_in) {
  if (n_in == 0) throw DomainError("factorize: zero has no factorization");
  Integer n = abs_int(n_in);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < (1ul << 16); p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  Integer m = n;
  unsigned v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

long valuation(const Rational& r, const Integer& p) {
  if (r == 0) throw DomainError("valuation of zero");
  return static_cast<long>(valuation(r.get_num(), p)) - static_cast<long>(valuation(r.get_den(), p));
}

Integer squarefree_kernel(const Rational& r) {
  if (r == 0) throw DomainError("square class of zero");
  Integer m = r.get_num() * r.get_den();
  Integer k = sgn(m) < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(m))
    if (e % 2) k *= p;
  return k;
}

int legendre(const Integer& a, const Integer& p) {
  return mpz_jacobi(a.get_mpz_t(), p.get_mpz_t());
}

}  // namespace qp
