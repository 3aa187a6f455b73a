#include "qp/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "qp/arith.hpp"
#include "qp/errors.hpp"

namespace qp {

IntPolynomial::IntPolynomial(IntVector coefficients) : coeffs_(std::move(coefficients)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::linear_factor(const Rational& root) {
  return IntPolynomial(IntVector{-root.get_num(), root.get_den()});
}

IntPolynomial IntPolynomial::monomial(const Integer& c, int degree) {
  IntVector v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const Integer& IntPolynomial::leading() const {
  if (is_zero()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Integer IntPolynomial::evaluate(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int IntPolynomial::sign_at(const Rational& x) const {
  // den^deg * p(num/den) is an integer with the same sign (den > 0).
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer acc = 0;
  Integer bpow = 1;
  // Horner on the homogenized form: acc = sum c_i a^i b^(d-i).
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * a + *it * bpow;
    bpow *= b;
  }
  return sgn(acc);
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() <= 0) return {};
  IntVector d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

Integer IntPolynomial::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) g = qp::gcd(g, c);
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  Integer g = content();
  if (leading() < 0) g = -g;
  IntVector v = coeffs_;
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(v));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  IntVector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  IntVector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  IntVector v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const Integer& c, const IntPolynomial& a) {
  IntVector v = a.coeffs_;
  for (auto& x : v) x *= c;
  return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Integer mag = abs_int(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

IntPolynomial primitive_from_rational(const RatVector& coefficients) {
  return IntPolynomial(primitive_integer_vector(coefficients)).primitive_part();
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  IntVector r = a.coefficients();
  const IntVector& bv = b.coefficients();
  const int db = b.degree();
  const Integer& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Integer lead = r[static_cast<std::size_t>(k)];
    for (auto& c : r) c *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= lead * bv[static_cast<std::size_t>(j)];
  }
  return IntPolynomial(std::move(r));
}

std::optional<IntPolynomial> exact_divide(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return IntPolynomial{};
  if (a.degree() < b.degree()) return std::nullopt;
  IntVector r = a.coefficients();
  IntVector q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const IntVector& bv = b.coefficients();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    const Integer& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) return std::nullopt;
    Integer c = top / b.leading();
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * bv[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(k - db)] = std::move(c);
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = a.primitive_part();
  IntPolynomial y = b.primitive_part();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = pseudo_remainder(x, y).primitive_part();
    x = std::move(y);
    y = std::move(r);
  }
  return x.primitive_part();
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (p.degree() <= 0) return IntPolynomial{1};
  auto q = exact_divide(p.primitive_part(), gcd(p, p.derivative()));
  if (!q) throw InternalError("squarefree_part: gcd does not divide");
  return q->primitive_part();
}

namespace {

void check_degree(const IntPolynomial& p, const char* op) {
  if (p.is_zero()) throw DomainError(std::string(op) + ": zero polynomial");
  if (p.degree() > kMaxPolynomialDegree) {
    throw DomainError(std::string(op) + ": degree " + std::to_string(p.degree()) +
                      " exceeds the supported cap of " + std::to_string(kMaxPolynomialDegree));
  }
}

// Integer bound B with every real root in (-B, B).
Integer cauchy_bound(const IntPolynomial& p) {
  Integer m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs_int(p.coeff(i)));
  Integer lc = abs_int(p.leading());
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), m.get_mpz_t(), lc.get_mpz_t());
  return q + 2;
}

// Some point of (a, b) that is not a root of p.
Rational split_point(const IntPolynomial& p, const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  for (long j = 1; p.sign_at(m) == 0; ++j) m = a + (b - a) * Rational(j, 2 * j + 1);
  return m;
}

int sturm_count(const std::vector<IntPolynomial>& seq, const Rational& a, const Rational& b) {
  return sign_variations(seq, a) - sign_variations(seq, b);
}

}  // namespace

bool is_squarefree(const IntPolynomial& p) {
  check_degree(p, "is_squarefree");
  return gcd(p, p.derivative()).degree() <= 0;
}

std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p) {
  std::vector<IntPolynomial> seq{p, p.derivative()};
  if (seq.back().is_zero()) {
    seq.pop_back();
    return seq;
  }
  while (true) {
    const IntPolynomial& a = seq[seq.size() - 2];
    const IntPolynomial& b = seq.back();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem = lc(b)^(delta+1) * rem; restore the sign of -rem.
    const int delta = a.degree() - b.degree();
    const bool flip = b.leading() < 0 && (delta + 1) % 2 == 1;
    const Integer c = r.content();
    IntVector v = r.coefficients();
    for (auto& x : v) {
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
      if (!flip) x = -x;
    }
    seq.emplace_back(std::move(v));
  }
  return seq;
}

int sign_variations(const std::vector<IntPolynomial>& seq, const Rational& x) {
  int prev = 0, count = 0;
  for (const auto& s : seq) {
    const int sg = s.sign_at(x);
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++count;
    prev = sg;
  }
  return count;
}

int sign_variations_at_infinity(const std::vector<IntPolynomial>& seq, bool negative) {
  int prev = 0, count = 0;
  for (const auto& s : seq) {
    if (s.is_zero()) continue;
    int sg = sgn(s.leading());
    if (negative && s.degree() % 2 == 1) sg = -sg;
    if (prev != 0 && sg != prev) ++count;
    prev = sg;
  }
  return count;
}

std::vector<IsolatingInterval> isolate_real_roots(const IntPolynomial& p) {
  check_degree(p, "isolate_real_roots");
  if (!is_squarefree(p)) throw PreconditionError("isolate_real_roots: polynomial is not squarefree");
  if (p.degree() == 0) return {};
  const auto seq = sturm_sequence(p);
  const Rational bound(cauchy_bound(p));
  std::vector<IsolatingInterval> done;
  std::vector<IsolatingInterval> todo{{-bound, bound}};
  while (!todo.empty()) {
    IsolatingInterval iv = todo.back();
    todo.pop_back();
    const int n = sturm_count(seq, iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      done.push_back(iv);
      continue;
    }
    const Rational m = split_point(p, iv.lo, iv.hi);
    todo.push_back({iv.lo, m});
    todo.push_back({m, iv.hi});
  }
  std::sort(done.begin(), done.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return done;
}

IsolatingInterval refine(const IntPolynomial& p, IsolatingInterval iv, const Rational& max_width) {
  int slo = p.sign_at(iv.lo);
  while (iv.width() > max_width) {
    const Rational m = (iv.lo + iv.hi) / 2;
    const int sm = p.sign_at(m);
    if (sm == 0) {
      // Exact rational root: keep a small interval around it.
      const Rational q = std::min(Rational(iv.width() / 4), Rational(max_width / 4));
      iv = IsolatingInterval{m - q, m + q};
      return iv;
    }
    if (sm == slo) {
      iv.lo = m;
    } else {
      iv.hi = m;
    }
  }
  return iv;
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_rational_between(hi, lo);
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(c) <= hi) {
    // An integer lies in the interval; pick the one of least magnitude.
    if (lo <= 0 && hi >= 0) return 0;
    if (hi < 0) {
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
      return Rational(f);
    }
    return Rational(c);
  }
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  const Rational fl(f);
  const Rational inner = simplest_rational_between(1 / (hi - fl), 1 / (lo - fl));
  return fl + 1 / inner;
}

std::vector<Rational> rational_roots(const IntPolynomial& p) {
  check_degree(p, "rational_roots");
  const IntPolynomial s = squarefree_part(p);
  std::vector<Rational> roots;
  if (s.degree() <= 0) return roots;
  const Integer lc = abs_int(s.leading());
  const Rational width(1, 2 * lc * lc);
  for (const auto& iv : isolate_real_roots(s)) {
    const IsolatingInterval fine = refine(s, iv, width);
    const Rational cand = simplest_rational_between(fine.lo, fine.hi);
    if (s.sign_at(cand) == 0) roots.push_back(cand);
  }
  return roots;
}

namespace {

// Dense polynomials over F_q, low degree first, q < 2^31.
using ModPoly = std::vector<long>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long q) {
  long r = 1, e = q - 2;
  a %= q;
  while (e) {
    if (e & 1) r = r * a % q;
    a = a * a % q;
    e >>= 1;
  }
  return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, long q) {
  const long li = inv_mod(b.back(), q);
  while (a.size() >= b.size()) {
    const long c = a.back() * li % q;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % q + q) % q;
    trim(a);
  }
  return a;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, long q) {
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, long q) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % q;
  trim(c);
  return mod_rem(c, m, q);
}

// Bitmask of degrees k <= d for which p mod q has a factor of degree k, from
// the distinct-degree factorization; nullopt when q divides lc(p) or p is
// not squarefree mod q.
std::optional<unsigned> factor_degrees_mod(const IntPolynomial& p, long q, int d) {
  ModPoly f;
  for (const auto& c : p.coefficients()) {
    const Integer r = ((c % q) + q) % q;
    f.push_back(r.get_si());
  }
  trim(f);
  if (static_cast<int>(f.size()) != p.degree() + 1) return std::nullopt;
  ModPoly df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(static_cast<long>(i % q) * f[i] % q);
  trim(df);
  if (df.empty() || mod_gcd(f, df, q).size() != 1) return std::nullopt;
  std::vector<int> parts;
  ModPoly xp = mod_rem(ModPoly{0, 1}, f, q);
  for (int i = 1; static_cast<int>(f.size()) - 1 >= 2 * i; ++i) {
    // xp <- xp^q, so xp = x^(q^i) mod f.
    ModPoly r{1}, base = xp;
    for (long e = q; e; e >>= 1) {
      if (e & 1) r = mod_mulmod(r, base, f, q);
      base = mod_mulmod(base, base, f, q);
    }
    xp = r;
    ModPoly diff = xp;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] - 1 + q) % q;
    trim(diff);
    const ModPoly g = mod_gcd(f, diff, q);
    const int gd = static_cast<int>(g.size()) - 1;
    if (gd > 0) {
      for (int j = 0; j < gd / i; ++j) parts.push_back(i);
      // f <- f / g
      ModPoly quot(f.size() - g.size() + 1, 0), rem = f;
      const long li = inv_mod(g.back(), q);
      for (std::size_t k = quot.size(); k-- > 0;) {
        const long c = rem[k + g.size() - 1] * li % q;
        quot[k] = c;
        for (std::size_t t = 0; t < g.size(); ++t) rem[k + t] = ((rem[k + t] - c * g[t]) % q + q) % q;
      }
      f = std::move(quot);
      xp = mod_rem(xp, f, q);
    }
  }
  if (f.size() > 1) parts.push_back(static_cast<int>(f.size()) - 1);
  unsigned sums = 1;  // bit k: some subset of parts has degree sum k
  for (int e : parts) sums |= (sums << e);
  return sums & ((2u << d) - 2u);
}

}  // namespace

std::optional<IntPolynomial> kronecker_factor_upto(const IntPolynomial& p, int d) {
  check_degree(p, "kronecker_factor_upto");
  if (d < 1 || d > 3) throw DomainError("kronecker_factor_upto: degree bound must be in [1, 3]");
  // Candidate nodes ordered by the divisor count of p there; few divisors
  // means few interpolation choices.
  std::vector<std::pair<std::size_t, long>> ranked;
  for (long node : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L}) {
    const Integer v = p.evaluate(Integer(node));
    if (v == 0) return IntPolynomial{-node, 1};
    ranked.emplace_back(divisors(v).size(), node);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const int top = std::min(d, p.degree() - 1);
  // A factor of degree k reduces to a product of factors mod q of total
  // degree k; degrees ruled out at any prime are skipped.
  unsigned allowed = (2u << top) - 2u;
  static const long primes[] = {101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179};
  for (long q : primes) {
    if (allowed == 0) break;
    if (const auto m = factor_degrees_mod(p, q, top)) allowed &= *m;
  }
  if (allowed & 2u) {
    const auto roots = rational_roots(p);
    if (!roots.empty()) return IntPolynomial::linear_factor(roots.front()).primitive_part();
  }
  for (int k = 2; k <= top; ++k) {
    if (!(allowed >> k & 1u)) continue;
    // The last node only filters candidates, so it takes the largest count.
    std::vector<long> nodes;
    for (int i = 0; i <= k; ++i) nodes.push_back(ranked[static_cast<std::size_t>(i)].second);
    std::vector<Integer> values(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) values[static_cast<std::size_t>(i)] = p.evaluate(Integer(nodes[static_cast<std::size_t>(i)]));
    // Newton basis N_0 = 1, N_i = prod_{j<i} (t - x_j).
    std::vector<IntPolynomial> basis{IntPolynomial{1}};
    for (int i = 1; i <= k; ++i) basis.push_back(basis.back() * IntPolynomial{-nodes[static_cast<std::size_t>(i) - 1], 1});
    auto basis_at = [&](int i, int node) { return basis[static_cast<std::size_t>(i)].evaluate(Integer(nodes[static_cast<std::size_t>(node)])); };

    std::vector<std::vector<Integer>> choices(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      for (const auto& dv : divisors(values[static_cast<std::size_t>(i)])) {
        choices[static_cast<std::size_t>(i)].push_back(dv);
        if (i > 0) choices[static_cast<std::size_t>(i)].push_back(-dv);
      }
    }
    std::vector<Integer> leads;
    for (const auto& dv : divisors(p.leading())) {
      leads.push_back(dv);
      leads.push_back(-dv);
    }

    std::vector<Integer> newton(static_cast<std::size_t>(k) + 1);
    std::optional<IntPolynomial> found;
    // Depth-first over h(x_0), ..., h(x_{k-1}); the last Newton coefficient
    // is the leading coefficient of h, which must divide lc(p).
    auto search = [&](auto&& self, int level) -> bool {
      if (level == k) {
        for (const auto& c : leads) {
          newton[static_cast<std::size_t>(k)] = c;
          Integer hk = 0;
          for (int j = 0; j <= k; ++j) hk += newton[static_cast<std::size_t>(j)] * basis_at(j, k);
          if (hk == 0 || !mpz_divisible_p(values[static_cast<std::size_t>(k)].get_mpz_t(), hk.get_mpz_t())) continue;
          IntPolynomial h;
          for (int j = 0; j <= k; ++j) h = h + newton[static_cast<std::size_t>(j)] * basis[static_cast<std::size_t>(j)];
          if (exact_divide(p, h)) {
            found = h.primitive_part();
            return true;
          }
        }
        return false;
      }
      for (const auto& v : choices[static_cast<std::size_t>(level)]) {
        Integer rest = v;
        for (int j = 0; j < level; ++j) rest -= newton[static_cast<std::size_t>(j)] * basis_at(j, level);
        const Integer denom = basis_at(level, level);
        if (!mpz_divisible_p(rest.get_mpz_t(), denom.get_mpz_t())) continue;
        newton[static_cast<std::size_t>(level)] = rest / denom;
        if (self(self, level + 1)) return true;
      }
      return false;
    };
    if (search(search, 0)) return found;
  }
  return std::nullopt;
}

}  // namespace qp
