#include "qp/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "qp/arith.hpp"
#include "qp/errors.hpp"
#include "qp/localglobal.hpp"

namespace qp {

// ---------------------------------------------------------------- points

ProjectivePoint ProjectivePoint::from(const RatVector& v) {
  const Integer den = common_denominator(v);
  IntVector ints;
  Integer g = 0;
  for (const auto& x : v) {
    ints.push_back(x.get_num() * (den / x.get_den()));
    g = gcd(g, ints.back());
  }
  if (g == 0) throw DomainError("projective point from the zero vector");
  for (auto& z : ints) z /= g;
  const auto first = std::find_if(ints.begin(), ints.end(), [](const Integer& z) { return z != 0; });
  if (*first < 0)
    for (auto& z : ints) z = -z;
  return {ints};
}

RatVector ProjectivePoint::rational() const { return RatVector(coords.begin(), coords.end()); }

Integer ProjectivePoint::height() const {
  Integer h = 0;
  for (const auto& z : coords) h = std::max(h, Integer(abs_int(z)));
  return h;
}

std::string ProjectivePoint::to_string() const {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) s << (i ? ":" : "") << coords[i].get_str();
  s << ')';
  return s.str();
}

QuadElement QuadraticAlgebra::add(const QuadElement& p, const QuadElement& q) const { return {p.x + q.x, p.y + q.y}; }

QuadElement QuadraticAlgebra::mul(const QuadElement& p, const QuadElement& q) const {
  // u^2 = -b u - c.
  const Rational yy = p.y * q.y;
  return {p.x * q.x - c_ * yy, p.x * q.y + p.y * q.x - b_ * yy};
}

QuadElement QuadraticPoint::evaluate(const QuadraticForm& q) const {
  if (v0.size() != q.dim() || v1.size() != q.dim()) throw DimensionError("quadratic point dimension mismatch");
  const QuadraticAlgebra alg(b, c);
  QuadElement total{0, 0};
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) {
      if (q(i, j) == 0) continue;
      const QuadElement pi{v0[i], v1[i]}, pj{v0[j], v1[j]};
      total = alg.add(total, alg.mul(QuadElement{q(i, j), 0}, alg.mul(pi, pj)));
    }
  return total;
}

// ---------------------------------------------------------------- point search

namespace {

using Wide = __int128;

/// Integer monomial coefficients of a positive multiple of q, as int64, in
/// a dense upper-triangular table c[i][j] (i <= j).
struct IntForm {
  std::size_t n = 0;
  std::vector<long long> c;  // n * n, c[i*n + j] for i <= j
  bool ok = true;

  explicit IntForm(const QuadraticForm& q) : n(q.dim()), c(q.dim() * q.dim(), 0) {
    const RatVector mono = q.monomials();
    const Integer den = common_denominator(mono);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++k) {
        const Integer z = mono[k].get_num() * (den / mono[k].get_den());
        if (!z.fits_slong_p() || abs_int(z) > Integer(1) << 40) ok = false;
        c[i * n + j] = ok ? z.get_si() : 0;
      }
  }

  Wide at(const long* x) const {
    Wide s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Wide row = 0;
      for (std::size_t j = i; j < n; ++j) row += static_cast<Wide>(c[i * n + j]) * x[j];
      s += row * x[i];
    }
    return s;
  }
};

long gcd_vec(const long* x, std::size_t n) {
  long g = 0;
  for (std::size_t i = 0; i < n; ++i) g = std::gcd(g, x[i]);
  return g;
}

/// Points with first nonzero coordinate index k equal to a.
void scan_block(const IntForm& f, const IntForm& g, std::size_t k, long a, long bound, std::vector<IntVector>& out) {
  const std::size_t n = f.n;
  std::vector<long> x(n, 0);
  x[k] = a;
  if (k + 1 == n) {
    if (a == 1 && f.at(x.data()) == 0 && g.at(x.data()) == 0) out.push_back(IntVector(x.begin(), x.end()));
    return;
  }
  const std::size_t last = n - 1;
  for (std::size_t i = k + 1; i < last; ++i) x[i] = -bound;
  while (true) {
    // f = A + B t + C t^2 in the last coordinate t.
    x[last] = 0;
    const Wide fa = f.at(x.data()), ga = g.at(x.data());
    Wide fb = 0, gb = 0;
    for (std::size_t i = 0; i < last; ++i) {
      fb += static_cast<Wide>(f.c[i * n + last]) * x[i];
      gb += static_cast<Wide>(g.c[i * n + last]) * x[i];
    }
    const Wide fc = f.c[last * n + last], gc = g.c[last * n + last];
    const long pg = gcd_vec(x.data(), last);
    for (long t = -bound; t <= bound; ++t) {
      const Wide tw = t;
      if (fa + fb * tw + fc * tw * tw != 0) continue;
      if (ga + gb * tw + gc * tw * tw != 0) continue;
      if (std::gcd(pg, t) != 1) continue;
      x[last] = t;
      out.push_back(IntVector(x.begin(), x.end()));
    }
    // Advance the odometer on coordinates k+1 .. last-1.
    std::size_t i = last;
    while (i > k + 1 && x[i - 1] == bound) x[--i] = -bound;
    if (i == k + 1) break;
    ++x[i - 1];
  }
}

}  // namespace

std::vector<ProjectivePoint> point_search(const QuadraticForm& f, const QuadraticForm& g, long bound) {
  if (f.dim() != g.dim()) throw DimensionError("point_search: forms have different dimensions");
  const IntForm fi(f), gi(g);
  if (!fi.ok || !gi.ok) return point_search_reference(f, g, bound);
  const std::size_t n = f.dim();
  // Lexicographic order: later first-nonzero index first, then its value.
  std::vector<std::pair<std::size_t, long>> blocks;
  for (std::size_t k = n; k-- > 0;)
    for (long a = 1; a <= bound; ++a) blocks.emplace_back(k, a);
  std::vector<std::vector<IntVector>> found(blocks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < blocks.size(); ++b) scan_block(fi, gi, blocks[b].first, blocks[b].second, bound, found[b]);
  std::vector<ProjectivePoint> out;
  for (auto& block : found)
    for (auto& v : block) out.push_back({std::move(v)});
  return out;
}

std::vector<ProjectivePoint> point_search_reference(const QuadraticForm& f, const QuadraticForm& g, long bound) {
  if (f.dim() != g.dim()) throw DimensionError("point_search: forms have different dimensions");
  const std::size_t n = f.dim();
  std::vector<ProjectivePoint> out;
  std::vector<long> x(n, -bound);
  while (true) {
    const auto first = std::find_if(x.begin(), x.end(), [](long z) { return z != 0; });
    if (first != x.end() && *first > 0 && gcd_vec(x.data(), n) == 1) {
      const RatVector v(x.begin(), x.end());
      if (evaluate(f, v) == 0 && evaluate(g, v) == 0) out.push_back({IntVector(x.begin(), x.end())});
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < bound) {
        ++x[i];
        break;
      }
      x[i] = -bound;
      if (i == 0) return out;
    }
  }
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found:
      return "found";
    case SearchStatus::proven_none:
      return "proven-none";
    default:
      return "not-found-within-bound";
  }
}

// ---------------------------------------------------------------- isotropic vectors

namespace {

constexpr double kBoxBudget = 3e5;
constexpr std::size_t kHalfTableCap = std::size_t(1) << 20;

long key_value(long d) { return d % 2 ? (d + 1) / 2 : -(d / 2); }

/// Vectors of max-norm exactly h in lexicographic order of the keys
/// 0, 1, -1, 2, -2, ...; normalized and primitive.
std::optional<IntVector> box_shell(const IntForm& q, long h) {
  const std::size_t n = q.n;
  std::vector<long> d(n, 0), x(n, 0);
  while (true) {
    long mx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = key_value(d[i]);
      mx = std::max(mx, std::labs(x[i]));
    }
    if (mx == h) {
      const auto first = std::find_if(x.begin(), x.end(), [](long z) { return z != 0; });
      if (*first > 0 && gcd_vec(x.data(), n) == 1 && q.at(x.data()) == 0) return IntVector(x.begin(), x.end());
    }
    std::size_t i = n;
    while (true) {
      if (i == 0) return std::nullopt;
      --i;
      if (d[i] < 2 * h) {
        ++d[i];
        break;
      }
      d[i] = 0;
    }
  }
}

/// Integer s with a / s a rational square, after removing square factors
/// found by trial division.
Integer reduced_square_class(const Rational& a, Rational& root) {
  Integer m = a.get_num() * a.get_den();
  Integer s = 1;
  Integer sq = 1;  // m = s * sq^2
  if (m < 0) {
    s = -1;
    m = -m;
  }
  for (unsigned long p = 2; p < 1024; ++p) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p * p)) {
      m /= p * p;
      sq *= p;
    }
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      s *= p;
    }
  }
  if (is_perfect_square(m)) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    sq *= r;
  } else {
    s *= m;
  }
  // a = num/den = num*den/den^2 = s * (sq/den)^2.
  root = make_rational(sq, a.get_den());
  return s;
}

/// Nonzero y in [0, bound]^n with sum s_i y_i^2 = 0 by meet in the middle.
std::optional<std::vector<long>> diagonal_zero(const std::vector<Integer>& s, long bound) {
  const std::size_t n = s.size();
  if (n < 2) return std::nullopt;
  const std::size_t na = (n + 1) / 2, nb = n - na;
  // Cap the half-table size.
  long b = bound;
  while (b > 1 && std::pow(double(b + 1), double(na)) > double(kHalfTableCap)) --b;
  std::vector<Wide> coef(n);
  for (std::size_t i = 0; i < n; ++i) {
    // |s_i| < 2^62 and y^2 <= 2^40 keep the sums inside 128 bits.
    if (!s[i].fits_slong_p() || abs_int(s[i]) > Integer(1) << 62) return std::nullopt;
    coef[i] = static_cast<Wide>(s[i].get_si());
  }
  auto enumerate = [b](std::size_t count, auto&& visit) {
    std::vector<long> y(count, 0);
    std::size_t index = 0;
    while (true) {
      visit(y, index++);
      std::size_t i = count;
      while (true) {
        if (i == 0) return;
        --i;
        if (y[i] < b) {
          ++y[i];
          break;
        }
        y[i] = 0;
      }
    }
  };
  std::vector<std::pair<Wide, std::uint32_t>> table;
  std::vector<std::vector<long>> avecs;
  enumerate(na, [&](const std::vector<long>& y, std::size_t idx) {
    Wide v = 0;
    for (std::size_t i = 0; i < na; ++i) v += coef[i] * y[i] * y[i];
    table.emplace_back(v, static_cast<std::uint32_t>(idx));
  });
  std::sort(table.begin(), table.end());
  auto decode_a = [&](std::uint32_t idx) {
    std::vector<long> y(na);
    for (std::size_t i = na; i-- > 0;) {
      y[i] = static_cast<long>(idx % static_cast<std::uint32_t>(b + 1));
      idx /= static_cast<std::uint32_t>(b + 1);
    }
    return y;
  };
  std::optional<std::vector<long>> hit;
  enumerate(nb, [&](const std::vector<long>& y, std::size_t idx) {
    if (hit) return;
    Wide v = 0;
    for (std::size_t i = 0; i < nb; ++i) v += coef[na + i] * y[i] * y[i];
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(-v, std::uint32_t(0)));
    // Skip the all-zero vector on both sides.
    if (idx == 0 && it != table.end() && it->first == 0 && it->second == 0) ++it;
    if (it == table.end() || it->first != -v) return;
    std::vector<long> full = decode_a(it->second);
    full.insert(full.end(), y.begin(), y.end());
    hit = full;
  });
  return hit;
}

std::optional<IntVector> box_phase(const QuadraticForm& q, long bound) {
  const IntForm qi(q);
  if (!qi.ok) return std::nullopt;
  double spent = 0;
  for (long h = 1; h <= bound; ++h) {
    spent += std::pow(double(2 * h + 1), double(q.dim()));
    if (spent > kBoxBudget && h > 1) break;
    if (auto v = box_shell(qi, h)) return v;
  }
  return std::nullopt;
}

std::optional<IntVector> diagonal_phase(const QuadraticForm& q, long bound) {
  const Diagonalization d = diagonalize(q);
  std::vector<Integer> s(d.entries.size());
  RatVector roots(d.entries.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = reduced_square_class(d.entries[i], roots[i]);
  const auto y = diagonal_zero(s, bound);
  if (!y) return std::nullopt;
  RatVector x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = Rational((*y)[i]) / roots[i];
  return ProjectivePoint::from(d.transform * x).coords;
}

bool witt_certifies_none(const QuadraticForm& q) { return global_witt_index(q).witt.index == 0; }

}  // namespace

IsotropicVectorResult isotropic_vector(const QuadraticForm& q, long bound) {
  IsotropicVectorResult res;
  const auto radical = nullspace(q.gram());
  if (!radical.empty()) {
    res.status = SearchStatus::found;
    res.vector = ProjectivePoint::from(radical.front());
    return res;
  }
  if (witt_certifies_none(q)) {
    res.status = SearchStatus::proven_none;
    return res;
  }
  auto v = box_phase(q, bound);
  if (!v) v = diagonal_phase(q, bound);
  if (v) {
    res.status = SearchStatus::found;
    res.vector = ProjectivePoint{*v};
    if (evaluate(q, res.vector->rational()) != 0) throw InternalError("isotropic_vector: witness does not vanish");
  }
  return res;
}

// ---------------------------------------------------------------- subspaces

namespace {

/// Basis of a complement of span(us) inside span(ws), assuming span(us) is
/// contained in span(ws).
std::vector<RatVector> complement_in(const std::vector<RatVector>& us, const std::vector<RatVector>& ws) {
  std::vector<RatVector> acc = us, out;
  for (const auto& w : ws) {
    acc.push_back(w);
    if (rank(RatMatrix::from_columns(acc)) == acc.size()) {
      out.push_back(w);
    } else {
      acc.pop_back();
    }
  }
  return out;
}

std::vector<RatVector> orthogonal_of(const QuadraticForm& q, const std::vector<RatVector>& us) {
  const std::size_t n = q.dim();
  if (us.empty()) {
    std::vector<RatVector> all;
    for (std::size_t i = 0; i < n; ++i) {
      RatVector e(n, 0);
      e[i] = 1;
      all.push_back(e);
    }
    return all;
  }
  RatMatrix m(us.size(), n);
  for (std::size_t r = 0; r < us.size(); ++r) {
    const RatVector row = q.gram() * us[r];
    for (std::size_t j = 0; j < n; ++j) m(r, j) = row[j];
  }
  return nullspace(m);
}

/// One greedy extension step; nullopt status when the step fails.
IsotropicVectorResult extend(const QuadraticForm& q, const std::vector<RatVector>& us, long bound,
                             std::vector<RatVector>& out_vec) {
  const auto w = orthogonal_of(q, us);
  const auto c = complement_in(us, w);
  IsotropicVectorResult r;
  if (c.empty()) {
    r.status = SearchStatus::proven_none;
    return r;
  }
  const QuadraticForm qc = restrict(q, c);
  r = isotropic_vector(qc, bound);
  if (r.status != SearchStatus::found) return r;
  RatVector v(q.dim(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) v[j] += Rational(r.vector->coords[i]) * c[i][j];
  out_vec.push_back(ProjectivePoint::from(v).rational());
  return r;
}

}  // namespace

IsotropicSubspaceResult isotropic_subspace(const QuadraticForm& q, std::size_t dim, long bound) {
  IsotropicSubspaceResult res;
  const Diagonalization d = diagonalize(q);
  const std::size_t radical = q.dim() - d.rank;
  const RatVector nz = d.nonzero_entries();
  const std::size_t index = nz.empty() ? 0 : global_witt_index(QuadraticForm::diagonal(nz)).witt.index;
  if (dim > radical + index) {
    res.status = SearchStatus::proven_none;
    return res;
  }
  std::vector<RatVector> us;
  while (us.size() < dim) {
    const auto step = extend(q, us, bound, us);
    if (step.status != SearchStatus::found) {
      res.status = step.status;
      return res;
    }
  }
  res.status = SearchStatus::found;
  for (const auto& u : us) res.basis.push_back(ProjectivePoint::from(u).coords);
  return res;
}

IsotropicSubspaceResult isotropic_plane(const QuadraticForm& q, long bound) { return isotropic_subspace(q, 2, bound); }

std::vector<IntVector> greedy_isotropic_subspace(const QuadraticForm& q, std::size_t max_dim, long bound) {
  std::vector<RatVector> us;
  while (us.size() < max_dim) {
    if (extend(q, us, bound, us).status != SearchStatus::found) break;
  }
  std::vector<IntVector> out;
  for (const auto& u : us) out.push_back(ProjectivePoint::from(u).coords);
  return out;
}

// ---------------------------------------------------------------- line points

LinePointResult quadratic_point_from_line(const QuadraticForm& f, const QuadraticForm& g, const RatVector& u,
                                          const RatVector& v) {
  if (rank(RatMatrix::from_columns({u, v})) != 2) throw PreconditionError("quadratic_point_from_line: u, v dependent");
  // Restrictions a s^2 + b s t + c t^2 of f and g to s u + t v.
  auto binary = [&](const QuadraticForm& q) {
    return std::array<Rational, 3>{evaluate(q, u), 2 * q.bilinear(u, v), evaluate(q, v)};
  };
  const auto rf = binary(f), rg = binary(g);
  // Some member vanishes on the plane iff the two restrictions are dependent.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (rf[i] * rg[j] != rf[j] * rg[i])
        throw PreconditionError("quadratic_point_from_line: no pencil member vanishes on the plane");
  const bool f_zero = std::all_of(rf.begin(), rf.end(), [](const Rational& x) { return x == 0; });
  const bool g_zero = std::all_of(rg.begin(), rg.end(), [](const Rational& x) { return x == 0; });
  LinePointResult res;
  if (f_zero && g_zero) {
    res.type = "line";
    res.line = {ProjectivePoint::from(u).coords, ProjectivePoint::from(v).coords};
    return res;
  }
  const auto& r = g_zero ? rf : rg;
  const Rational &a = r[0], &b = r[1], &c = r[2];
  auto combo = [&](const Rational& s, const Rational& t) {
    RatVector w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = s * u[i] + t * v[i];
    return ProjectivePoint::from(w);
  };
  res.type = "rational";
  if (c == 0) {
    // t (... ) factor absent: s (a s + b t) = 0.
    res.points.push_back(combo(0, 1));
    if (a != 0 || b != 0) {
      const ProjectivePoint other = combo(-b, a);
      if (!(other == res.points.front())) res.points.push_back(other);
    }
  } else {
    // Points u + x v with c x^2 + b x + a = 0.
    const Rational disc = b * b - 4 * a * c;
    if (is_rational_square(disc)) {
      const Rational root = rational_sqrt(disc);
      for (const Rational& x : std::array<Rational, 2>{(-b - root) / (2 * c), (-b + root) / (2 * c)}) {
        const ProjectivePoint p = combo(1, x);
        if (res.points.empty() || !(p == res.points.front())) res.points.push_back(p);
      }
      std::sort(res.points.begin(), res.points.end(),
                [](const ProjectivePoint& l, const ProjectivePoint& r) { return l.coords < r.coords; });
    } else {
      res.type = "quadratic";
      res.quadratic = QuadraticPoint{b / c, a / c, u, v};
    }
  }
  for (const auto& p : res.points)
    if (evaluate(f, p.rational()) != 0 || evaluate(g, p.rational()) != 0)
      throw InternalError("quadratic_point_from_line: rational point check failed");
  if (res.quadratic && (!res.quadratic->lies_on(f) || !res.quadratic->lies_on(g)))
    throw InternalError("quadratic_point_from_line: quadratic point check failed");
  return res;
}

}  // namespace qp
