#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

std::vector<Integer> naive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots_by_divisors(const qp::IntPolynomial& p) {
  std::set<Rational> roots;
  qp::IntVector c = p.coefficients();
  std::size_t shift = 0;
  while (shift < c.size() && c[shift] == 0) ++shift;
  if (shift > 0) roots.insert(0);
  if (shift + 1 < c.size()) {
    const Integer a0 = c[shift];
    const Integer an = c.back();
    for (const auto& a : naive_divisors(a0))
      for (const auto& b : naive_divisors(an))
        for (int s : {1, -1}) {
          Rational r(s * a, b);
          r.canonicalize();
          if (p.evaluate(r) == 0) roots.insert(r);
        }
  }
  return {roots.begin(), roots.end()};
}

Rational leibniz_det(const qp::RatMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Isotropy hensel_isotropy(const RatVector& diagonal, long p, int k) {
  // Reduce every entry to a squarefree integer in its square class.
  const std::size_t n = diagonal.size();
  std::vector<Integer> a(n);
  std::vector<int> va(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer m = diagonal[i].get_num() * diagonal[i].get_den();
    Integer sf = 1;
    if (m < 0) {
      sf = -1;
      m = -m;
    }
    for (Integer q = 2; q * q <= m; ++q) {
      int e = 0;
      while (m % q == 0) {
        m /= q;
        ++e;
      }
      if (e % 2) sf *= q;
    }
    sf *= m;
    a[i] = sf;
    va[i] = (sf % p == 0) ? 1 : 0;
  }
  const int v2 = (p == 2) ? 1 : 0;
  Integer pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;

  auto f_mod = [&](const std::vector<Integer>& x, const Integer& mod) {
    Integer s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * x[i] * x[i];
    Integer r = s % mod;
    return r;
  };
  auto val = [&](Integer z) {
    if (z == 0) return 1000;
    int v = 0;
    while (z % p == 0) {
      z /= p;
      ++v;
    }
    return v;
  };

  bool undecided = false;
  std::vector<Integer> x(n);
  // x holds digits mod p^j; first unit coordinate fixed to 1.
  std::function<bool(std::size_t, int, const Integer&)> dfs = [&](std::size_t lead, int j, const Integer& pj) -> bool {
    if (f_mod(x, pj) != 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
      Integer xi = x[i] % pj;
      if (xi == 0) continue;
      const int v = v2 + va[i] + val(xi);
      if (2 * v + 1 <= j) return true;
    }
    if (j == k) {
      undecided = true;
      return false;
    }
    // Lift: add p^j * d_i to every coordinate except the fixed one.
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i)
      if (i != lead) free.push_back(i);
    const Integer pj1 = pj * p;
    std::vector<long> d(free.size(), 0);
    std::vector<Integer> saved = x;
    while (true) {
      for (std::size_t t = 0; t < free.size(); ++t) x[free[t]] = saved[free[t]] + pj * d[t];
      if (dfs(lead, j + 1, pj1)) return true;
      std::size_t t = 0;
      while (t < d.size() && ++d[t] == p) d[t++] = 0;
      if (t == d.size()) break;
    }
    x = saved;
    return false;
  };

  for (std::size_t lead = 0; lead < n; ++lead) {
    // Level 1: coordinates before lead are 0 mod p, lead is 1, after are free.
    std::vector<std::size_t> free;
    for (std::size_t i = lead + 1; i < n; ++i) free.push_back(i);
    std::vector<long> d(free.size(), 0);
    while (true) {
      std::fill(x.begin(), x.end(), Integer(0));
      x[lead] = 1;
      for (std::size_t t = 0; t < free.size(); ++t) x[free[t]] = d[t];
      if (dfs(lead, 1, Integer(p))) return Isotropy::isotropic;
      std::size_t t = 0;
      while (t < d.size() && ++d[t] == p) d[t++] = 0;
      if (t == d.size()) break;
    }
  }
  return undecided ? Isotropy::undecided : Isotropy::anisotropic;
}

bool hensel_isotropic(const RatVector& diagonal, long p) {
  for (int k = (p == 2 ? 6 : 3); k <= 14; k += 2) {
    const Isotropy r = hensel_isotropy(diagonal, p, k);
    if (r != Isotropy::undecided) return r == Isotropy::isotropic;
  }
  throw std::runtime_error("hensel_isotropic: undecided");
}

int hilbert_by_search(const Rational& a, const Rational& b, long p) {
  return hensel_isotropic({a, b, Rational(-1)}, p) ? 1 : -1;
}

RatVector charpoly_faddeev(const qp::RatMatrix& a) {
  const std::size_t n = a.rows();
  RatVector c(n + 1, 0);
  c[n] = 1;
  // M_1 = I, c_{n-k} = -tr(A M_k) / k, M_{k+1} = A M_k + c_{n-k} I.
  qp::RatMatrix m = qp::RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    qp::RatMatrix am(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t t = 0; t < n; ++t) s += a(i, t) * m(t, j);
        am(i, j) = s;
      }
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
    m = am;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k];
  }
  return c;
}

Signs signature_by_descartes(const qp::RatMatrix& a) {
  const RatVector c = charpoly_faddeev(a);
  Signs s;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  s.zero = low;
  auto changes = [&](bool flip) {
    std::size_t count = 0;
    int last = 0;
    for (std::size_t i = low; i < c.size(); ++i) {
      int sg = sgn(c[i]);
      if (sg == 0) continue;
      if (flip && i % 2 == 1) sg = -sg;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  s.pos = changes(false);
  s.neg = changes(true);
  return s;
}

}  // namespace oracle
