#include "qp/fforacle.hpp"

#include <algorithm>
#include <atomic>

#include "qp/arith.hpp"
#include "qp/errors.hpp"

namespace qp {

using Elem = FiniteField::Elem;

// ---------------------------------------------------------------- field

namespace {

using Poly = std::vector<unsigned>;  // coefficients mod p, low to high

Poly polymulmod(const Poly& a, const Poly& b, const Poly& modulus, unsigned p) {
  const std::size_t m = modulus.size() - 1;
  std::vector<unsigned long> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + 1ul * a[i] * b[j]) % p;
  for (std::size_t d = prod.size(); d-- > m;) {
    const unsigned long c = prod[d];
    if (c == 0) continue;
    // Monic modulus: x^m = -(lower part).
    for (std::size_t i = 0; i < m; ++i) prod[d - m + i] = (prod[d - m + i] + (p - c) * modulus[i]) % p;
    prod[d] = 0;
  }
  return Poly(prod.begin(), prod.begin() + m);
}

/// Remainder of a by a monic b, both mod p.
Poly polyrem(Poly a, const Poly& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  for (std::size_t d = a.size(); d-- > db;) {
    const unsigned c = a[d] % p;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[d - db + i] = (a[d - db + i] + (p - c) * b[i]) % p;
  }
  a.resize(db);
  return a;
}

Poly decode(unsigned e, unsigned p, std::size_t len) {
  Poly c(len, 0);
  for (std::size_t i = 0; i < len; ++i, e /= p) c[i] = e % p;
  return c;
}

unsigned encode(const Poly& c, unsigned p) {
  unsigned e = 0;
  for (std::size_t i = c.size(); i-- > 0;) e = e * p + c[i];
  return e;
}

bool irreducible(const Poly& f, unsigned p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t k = 1; 2 * k <= m; ++k) {
    unsigned count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (unsigned e = 0; e < count; ++e) {
      Poly g = decode(e, p, k);
      g.push_back(1);
      const Poly r = polyrem(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](unsigned c) { return c == 0; })) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(unsigned p, unsigned m) : p_(p), m_(m) {
  if (p < 3 || !is_probable_prime(Integer(p))) throw DomainError("finite field: characteristic must be an odd prime");
  if (m < 1) throw DomainError("finite field: degree must be positive");
  unsigned long q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > 4096) throw DomainError("finite field: q = p^m is capped at 4096");
  }
  q_ = static_cast<unsigned>(q);
  for (unsigned e = 0;; ++e) {
    Poly f = decode(e, p, m);
    f.push_back(1);
    if (irreducible(f, p)) {
      modulus_ = f;
      break;
    }
  }
  // Discrete logarithms from the first primitive element.
  std::vector<unsigned> exp(q_ - 1), log(q_, 0);
  for (unsigned g = 1; g < q_; ++g) {
    const Poly gp = decode(g, p, m);
    Poly cur = decode(1, p, m);
    bool primitive = true;
    for (unsigned k = 0; k < q_ - 1; ++k) {
      const unsigned e = encode(cur, p);
      if (k > 0 && e == 1) {
        primitive = false;
        break;
      }
      exp[k] = e;
      cur = polymulmod(cur, gp, modulus_, p);
    }
    if (primitive) break;
  }
  for (unsigned k = 0; k < q_ - 1; ++k) log[exp[k]] = k;

  auto t = std::make_shared<Tables>();
  t->add.resize(std::size_t(q_) * q_);
  t->mul.resize(std::size_t(q_) * q_);
  t->neg.resize(q_);
  t->inv.resize(q_);
  t->square.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    const Poly ca = decode(a, p, m);
    Poly n(m);
    for (unsigned i = 0; i < m; ++i) n[i] = (p - ca[i]) % p;
    t->neg[a] = static_cast<std::uint16_t>(encode(n, p));
    for (unsigned b = 0; b < q_; ++b) {
      const Poly cb = decode(b, p, m);
      Poly s(m);
      for (unsigned i = 0; i < m; ++i) s[i] = (ca[i] + cb[i]) % p;
      t->add[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(encode(s, p));
      t->mul[std::size_t(a) * q_ + b] =
          (a == 0 || b == 0) ? 0 : static_cast<std::uint16_t>(exp[(log[a] + log[b]) % (q_ - 1)]);
    }
    t->inv[a] = a == 0 ? 0 : static_cast<std::uint16_t>(exp[(q_ - 1 - log[a]) % (q_ - 1)]);
  }
  for (unsigned a = 0; a < q_; ++a) t->square[t->mul[std::size_t(a) * q_ + a]] = 1;
  add_ = t->add.data();
  mul_ = t->mul.data();
  t_ = std::move(t);
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw DomainError("finite field: inverse of zero");
  return t_->inv[a];
}

Elem FiniteField::pow(Elem a, unsigned long e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem FiniteField::from_integer(const Integer& z) const {
  Integer r = z % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r.get_ui());
}

Elem FiniteField::from_rational(const Rational& r) const {
  const Elem den = from_integer(r.get_den());
  if (den == 0) throw DomainError("reduction: p divides a denominator");
  return mul(from_integer(r.get_num()), inv(den));
}

std::vector<unsigned> FiniteField::coefficients(Elem a) const { return decode(a, p_, m_); }

// ---------------------------------------------------------------- forms

FFForm::FFForm(std::size_t dim, FFVector gram, const FiniteField& field)
    : dim_(dim), gram_(std::move(gram)), field_(field) {
  if (gram_.size() != dim * dim) throw DimensionError("FFForm: Gram matrix has the wrong size");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_[i * dim + j] != gram_[j * dim + i]) throw DimensionError("FFForm: Gram matrix not symmetric");
}

FFForm FFForm::reduce(const QuadraticForm& q, const FiniteField& field) {
  FFVector g(q.dim() * q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = 0; j < q.dim(); ++j) g[i * q.dim() + j] = field.from_rational(q(i, j));
  return FFForm(q.dim(), std::move(g), field);
}

FFForm FFForm::zero(std::size_t dim, const FiniteField& field) { return FFForm(dim, FFVector(dim * dim, 0), field); }

Elem FFForm::value(const Elem* x) const {
  const FiniteField& F = field_;
  Elem s = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    Elem row = F.mul(gram_[i * dim_ + i], x[i]);
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Elem c = gram_[i * dim_ + j];
      row = F.add(row, F.mul(F.add(c, c), x[j]));
    }
    s = F.add(s, F.mul(row, x[i]));
  }
  return s;
}

Elem FFForm::bilinear(const Elem* x, const Elem* y) const {
  const FiniteField& F = field_;
  Elem s = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    Elem row = 0;
    for (std::size_t j = 0; j < dim_; ++j) row = F.add(row, F.mul(gram_[i * dim_ + j], y[j]));
    s = F.add(s, F.mul(x[i], row));
  }
  return s;
}

FFForm FFForm::combine(Elem a, const FFForm& f, Elem b, const FFForm& g) {
  if (f.dim_ != g.dim_) throw DimensionError("FFForm::combine: dimension mismatch");
  const FiniteField& F = f.field_;
  FFVector out(f.gram_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = F.add(F.mul(a, f.gram_[k]), F.mul(b, g.gram_[k]));
  return FFForm(f.dim_, std::move(out), F);
}

namespace {

/// Row reduction in place; returns the rank and the determinant of a
/// square matrix (0 when singular).
std::pair<std::size_t, Elem> eliminate(FFVector m, std::size_t rows, std::size_t cols, const FiniteField& F) {
  std::size_t rank = 0;
  Elem det = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) {
      det = 0;
      continue;
    }
    if (piv != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
      det = F.neg(det);
    }
    const Elem pv = m[rank * cols + c];
    det = F.mul(det, pv);
    const Elem ip = F.inv(pv);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Elem factor = F.mul(m[i * cols + c], ip);
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j) m[i * cols + j] = F.sub(m[i * cols + j], F.mul(factor, m[rank * cols + j]));
    }
    ++rank;
  }
  if (rank < rows) det = 0;
  return {rank, det};
}

}  // namespace

Elem FFForm::determinant() const { return eliminate(gram_, dim_, dim_, field_).second; }

std::size_t FFForm::rank() const { return eliminate(gram_, dim_, dim_, field_).first; }

bool FFForm::is_zero() const {
  return std::all_of(gram_.begin(), gram_.end(), [](Elem e) { return e == 0; });
}

WittIndexResult ff_witt_index(const FFForm& q) {
  const Elem det = q.determinant();
  if (det == 0) throw PreconditionError("ff_witt_index: degenerate form");
  const FiniteField& F = q.field();
  const std::size_t n = q.dim(), m = n / 2;
  WittIndexResult r;
  if (n % 2 == 1) {
    r.index = m;
  } else {
    const Elem sign = m % 2 ? F.neg(1) : 1;
    r.index = F.is_square(F.mul(sign, det)) ? m : m - 1;
  }
  r.anisotropic_dim = n - 2 * r.index;
  return r;
}

// ---------------------------------------------------------------- points

namespace {

void check_pair(const FFForm& f, const FFForm& g) {
  if (f.dim() != g.dim()) throw DimensionError("finite field enumeration: dimension mismatch");
  if (f.field().q() != g.field().q())
    throw DimensionError("finite field enumeration: forms over different fields");
}

unsigned long saturating_pow(unsigned long q, std::size_t e) {
  unsigned long r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > (~0ul) / q) return ~0ul;
    r *= q;
  }
  return r;
}

/// Zeros of f and g among normalized vectors with leading 1 at position j
/// and x[j+1] = lead (when j + 1 < N - 1). Enumerates the middle
/// coordinates and solves nothing: the last coordinate runs over F_q with
/// the value written as A + B t + C t^2.
unsigned long count_block(const FFForm& f, const FFForm& g, std::size_t j, Elem lead) {
  const FiniteField& F = f.field();
  const std::size_t N = f.dim(), last = N - 1, q = F.q();
  FFVector x(N, 0);
  x[j] = 1;
  if (j == last) return f.value(x.data()) == 0 && g.value(x.data()) == 0 ? 1 : 0;
  FFVector sq(q);
  for (Elem t = 0; t < q; ++t) sq[t] = F.mul(t, t);
  const std::size_t mid_lo = j + 2 <= last ? j + 2 : last;  // odometer range [mid_lo, last)
  if (j + 1 < last) x[j + 1] = lead;
  unsigned long count = 0;
  while (true) {
    x[last] = 0;
    const Elem fa = f.value(x.data()), ga = g.value(x.data());
    Elem fb = 0, gb = 0;
    for (std::size_t i = 0; i < last; ++i) {
      fb = F.add(fb, F.mul(f(i, last), x[i]));
      gb = F.add(gb, F.mul(g(i, last), x[i]));
    }
    fb = F.add(fb, fb);
    gb = F.add(gb, gb);
    const Elem fc = f(last, last), gc = g(last, last);
    for (Elem t = 0; t < q; ++t)
      if (F.add(fa, F.add(F.mul(fb, t), F.mul(fc, sq[t]))) == 0 &&
          F.add(ga, F.add(F.mul(gb, t), F.mul(gc, sq[t]))) == 0)
        ++count;
    std::size_t i = last;
    while (i > mid_lo && x[i - 1] == q - 1) x[--i] = 0;
    if (i == mid_lo) break;
    ++x[i - 1];
  }
  return count;
}

/// Calls visit on each normalized vector (first nonzero coordinate 1) in
/// order: leading position ascending, then the rest lexicographically.
template <class Visit>
bool for_each_normalized(std::size_t N, unsigned q, Visit&& visit) {
  FFVector x(N, 0);
  for (std::size_t j = 0; j < N; ++j) {
    std::fill(x.begin(), x.end(), 0);
    x[j] = 1;
    while (true) {
      if (!visit(x)) return false;
      std::size_t i = N;
      while (i > j + 1 && x[i - 1] == q - 1) x[--i] = 0;
      if (i == j + 1) break;
      ++x[i - 1];
    }
  }
  return true;
}

}  // namespace

unsigned long count_points(const FFForm& f, const FFForm& g, unsigned long budget) {
  check_pair(f, g);
  const std::size_t N = f.dim();
  const unsigned q = f.field().q();
  unsigned long cost = 0;
  for (std::size_t j = 0; j < N; ++j) cost += saturating_pow(q, N - 1 - j);
  if (cost > budget) throw BudgetError("count_points: " + std::to_string(cost) + " evaluations exceed the budget");
  std::vector<std::pair<std::size_t, Elem>> blocks;
  for (std::size_t j = 0; j < N; ++j) {
    if (j + 1 < N - 1) {
      for (Elem a = 0; a < q; ++a) blocks.emplace_back(j, a);
    } else {
      blocks.emplace_back(j, 0);
    }
  }
  std::vector<unsigned long> counts(blocks.size(), 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < blocks.size(); ++b) counts[b] = count_block(f, g, blocks[b].first, blocks[b].second);
  unsigned long total = 0;
  for (auto c : counts) total += c;
  return total;
}

unsigned long count_points_reference(const FFForm& f, const FFForm& g, unsigned long budget) {
  check_pair(f, g);
  const std::size_t N = f.dim();
  const unsigned q = f.field().q();
  if (saturating_pow(q, N) > budget) throw BudgetError("count_points_reference: budget exceeded");
  FFVector x(N, 0);
  unsigned long zeros = 0;
  while (true) {
    if (f.value(x.data()) == 0 && g.value(x.data()) == 0) ++zeros;
    std::size_t i = N;
    while (i > 0 && x[i - 1] == q - 1) x[--i] = 0;
    if (i == 0) break;
    ++x[i - 1];
  }
  return (zeros - 1) / (q - 1);
}

std::optional<FFVector> find_point(const FFForm& f, const FFForm& g, unsigned long budget) {
  check_pair(f, g);
  std::optional<FFVector> hit;
  unsigned long work = 0;
  for_each_normalized(f.dim(), f.field().q(), [&](const FFVector& x) {
    if (++work > budget) throw BudgetError("find_point: budget exceeded");
    if (f.value(x.data()) == 0 && g.value(x.data()) == 0) {
      hit = x;
      return false;
    }
    return true;
  });
  return hit;
}

// ---------------------------------------------------------------- subspaces

namespace {

struct PlaneSearch {
  const FFForm& f;
  const FFForm& g;
  std::size_t rows_wanted;
  bool keep;
  unsigned long budget;
  std::atomic<unsigned long>& work;
  std::atomic<bool>& over;

  /// Extends the echelon basis `rows` (pivots ascending) by one row.
  void extend(std::vector<FFVector>& rows, std::vector<std::size_t>& pivots, SubspaceCount& out) const {
    if (rows.size() == rows_wanted) {
      ++out.count;
      if (keep) out.bases.push_back(rows);
      return;
    }
    if (over.load(std::memory_order_relaxed)) return;
    const FiniteField& F = f.field();
    const std::size_t N = f.dim(), q = F.q();
    const std::size_t need = rows_wanted - rows.size();
    // Linear functionals G_h R for the earlier rows.
    std::vector<FFVector> funcs;
    for (const auto& r : rows)
      for (const FFForm* h : {&f, &g}) {
        FFVector w(N, 0);
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t k = 0; k < N; ++k) w[i] = F.add(w[i], F.mul((*h)(i, k), r[k]));
        funcs.push_back(std::move(w));
      }
    for (std::size_t j = pivots.back() + 1; j + need <= N; ++j) {
      if (std::any_of(rows.begin(), rows.end(), [j](const FFVector& r) { return r[j] != 0; })) continue;
      // Unknowns v[j+1 .. N-1]; equations w . v = 0 with v[j] = 1.
      const std::size_t nv = N - j - 1, ne = funcs.size();
      FFVector a(ne * (nv + 1));
      for (std::size_t e = 0; e < ne; ++e) {
        for (std::size_t c = 0; c < nv; ++c) a[e * (nv + 1) + c] = funcs[e][j + 1 + c];
        a[e * (nv + 1) + nv] = F.neg(funcs[e][j]);
      }
      // Gauss-Jordan on the augmented matrix.
      std::vector<std::size_t> pcols;
      std::size_t rk = 0;
      bool consistent = true;
      for (std::size_t c = 0; c <= nv && rk < ne; ++c) {
        std::size_t piv = rk;
        while (piv < ne && a[piv * (nv + 1) + c] == 0) ++piv;
        if (piv == ne) continue;
        if (c == nv) {
          consistent = false;
          break;
        }
        for (std::size_t k = 0; k <= nv; ++k) std::swap(a[piv * (nv + 1) + k], a[rk * (nv + 1) + k]);
        const Elem ip = F.inv(a[rk * (nv + 1) + c]);
        for (std::size_t k = 0; k <= nv; ++k) a[rk * (nv + 1) + k] = F.mul(a[rk * (nv + 1) + k], ip);
        for (std::size_t i = 0; i < ne; ++i) {
          if (i == rk || a[i * (nv + 1) + c] == 0) continue;
          const Elem fac = a[i * (nv + 1) + c];
          for (std::size_t k = 0; k <= nv; ++k)
            a[i * (nv + 1) + k] = F.sub(a[i * (nv + 1) + k], F.mul(fac, a[rk * (nv + 1) + k]));
        }
        pcols.push_back(c);
        ++rk;
      }
      if (!consistent) continue;
      std::vector<std::size_t> fcols;
      for (std::size_t c = 0; c < nv; ++c)
        if (std::find(pcols.begin(), pcols.end(), c) == pcols.end()) fcols.push_back(c);
      const unsigned long cells = saturating_pow(q, fcols.size());
      if (work.fetch_add(cells, std::memory_order_relaxed) + cells > budget) {
        over = true;
        return;
      }
      FFVector freev(fcols.size(), 0), v(N, 0);
      while (true) {
        std::fill(v.begin(), v.end(), 0);
        v[j] = 1;
        for (std::size_t k = 0; k < fcols.size(); ++k) v[j + 1 + fcols[k]] = freev[k];
        for (std::size_t e = 0; e < rk; ++e) {
          Elem val = a[e * (nv + 1) + nv];
          for (std::size_t k = 0; k < fcols.size(); ++k)
            val = F.sub(val, F.mul(a[e * (nv + 1) + fcols[k]], freev[k]));
          v[j + 1 + pcols[e]] = val;
        }
        if (f.value(v.data()) == 0 && g.value(v.data()) == 0) {
          rows.push_back(v);
          pivots.push_back(j);
          extend(rows, pivots, out);
          rows.pop_back();
          pivots.pop_back();
        }
        std::size_t i = fcols.size();
        while (i > 0 && freev[i - 1] == q - 1) freev[--i] = 0;
        if (i == 0) break;
        ++freev[i - 1];
      }
    }
  }
};

}  // namespace

SubspaceCount enumerate_r_planes(const FFForm& f, const FFForm& g, std::size_t r, bool keep_bases,
                                 unsigned long budget) {
  check_pair(f, g);
  const std::size_t N = f.dim();
  if (r + 1 > N) throw PreconditionError("enumerate_r_planes: r + 1 exceeds the dimension");
  const unsigned q = f.field().q();
  // First rows: the points themselves, in order.
  std::vector<std::pair<FFVector, std::size_t>> firsts;
  unsigned long first_work = 0;
  for_each_normalized(N, q, [&](const FFVector& x) {
    if (++first_work > budget) throw BudgetError("enumerate_r_planes: budget exceeded");
    if (f.value(x.data()) == 0 && g.value(x.data()) == 0) {
      const std::size_t piv = std::find(x.begin(), x.end(), 1u) - x.begin();
      if (piv + r + 1 <= N) firsts.emplace_back(x, piv);
    }
    return true;
  });
  std::atomic<unsigned long> work(first_work);
  std::atomic<bool> over(false);
  const PlaneSearch search{f, g, r + 1, keep_bases, budget, work, over};
  std::vector<SubspaceCount> parts(firsts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < firsts.size(); ++k) {
    std::vector<FFVector> rows{firsts[k].first};
    std::vector<std::size_t> pivots{firsts[k].second};
    search.extend(rows, pivots, parts[k]);
  }
  if (over) throw BudgetError("enumerate_r_planes: budget of " + std::to_string(budget) + " vectors exceeded");
  SubspaceCount out;
  out.work = work;
  for (auto& p : parts) {
    out.count += p.count;
    for (auto& b : p.bases) out.bases.push_back(std::move(b));
  }
  return out;
}

SubspaceCount enumerate_r_planes_reference(const FFForm& f, const FFForm& g, std::size_t r, unsigned long budget) {
  check_pair(f, g);
  const std::size_t N = f.dim(), k = r + 1;
  if (k > N) throw PreconditionError("enumerate_r_planes: r + 1 exceeds the dimension");
  const unsigned q = f.field().q();
  std::vector<std::vector<std::size_t>> pivot_sets;
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    pivot_sets.push_back(piv);
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == N - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t t = i; t < k; ++t) piv[t] = piv[t - 1] + 1;
  }
  // Free cells of each echelon shape.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> shapes;
  unsigned long cells = 0;
  for (const auto& ps : pivot_sets) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t row = 0; row < k; ++row)
      for (std::size_t c = ps[row] + 1; c < N; ++c)
        if (std::find(ps.begin(), ps.end(), c) == ps.end()) free.emplace_back(row, c);
    cells += saturating_pow(q, free.size());
    if (cells > budget) throw BudgetError("enumerate_r_planes_reference: Grassmannian exceeds the budget");
    shapes.push_back(std::move(free));
  }
  SubspaceCount out;
  out.work = cells;
  for (std::size_t s = 0; s < pivot_sets.size(); ++s) {
    const auto& free = shapes[s];
    FFVector vals(free.size(), 0);
    std::vector<FFVector> rows(k, FFVector(N, 0));
    while (true) {
      for (auto& row : rows) std::fill(row.begin(), row.end(), 0);
      for (std::size_t row = 0; row < k; ++row) rows[row][pivot_sets[s][row]] = 1;
      for (std::size_t t = 0; t < free.size(); ++t) rows[free[t].first][free[t].second] = vals[t];
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a)
        for (std::size_t b = a; b < k && ok; ++b)
          ok = f.bilinear(rows[a].data(), rows[b].data()) == 0 && g.bilinear(rows[a].data(), rows[b].data()) == 0;
      if (ok) ++out.count;
      std::size_t i = free.size();
      while (i > 0 && vals[i - 1] == q - 1) vals[--i] = 0;
      if (i == 0) break;
      ++vals[i - 1];
    }
  }
  return out;
}

// ---------------------------------------------------------------- pencils

namespace {

using FPoly = FFVector;  // coefficients over F_q, low to high

void trim(FPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FPoly pmul(const FPoly& a, const FPoly& b, const FiniteField& F) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  trim(r);
  return r;
}

FPoly psub(FPoly a, const FPoly& b, const FiniteField& F) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

/// Quotient and remainder; b nonzero.
std::pair<FPoly, FPoly> pdivmod(FPoly a, const FPoly& b, const FiniteField& F) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  FPoly quo(a.size() - b.size() + 1, 0);
  const Elem il = F.inv(b.back());
  for (std::size_t d = a.size(); d-- >= b.size();) {
    const Elem c = F.mul(a[d], il);
    quo[d - b.size() + 1] = c;
    if (c != 0)
      for (std::size_t i = 0; i < b.size(); ++i) a[d - b.size() + 1 + i] = F.sub(a[d - b.size() + 1 + i], F.mul(c, b[i]));
    if (d == b.size() - 1) break;
  }
  trim(a);
  trim(quo);
  return {quo, a};
}

FPoly pgcd(FPoly a, FPoly b, const FiniteField& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FPoly r = pdivmod(a, b, F).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

FFVector ff_det_form(const FFForm& f, const FFForm& g) {
  check_pair(f, g);
  const FiniteField& F = f.field();
  const std::size_t n = f.dim();
  // Fraction-free elimination on det(f + t g) with entries in F_q[t].
  std::vector<FPoly> m(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    m[i] = {f.gram()[i], g.gram()[i]};
    trim(m[i]);
  }
  FPoly prev{1};
  bool negate = false;
  FPoly det;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv * n + k].empty()) ++piv;
    if (piv == n) return FFVector(n + 1, 0);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[k * n + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        const FPoly num = psub(pmul(m[k * n + k], m[i * n + j], F), pmul(m[i * n + k], m[k * n + j], F), F);
        m[i * n + j] = pdivmod(num, prev, F).first;
      }
    prev = m[k * n + k];
  }
  det = prev;
  if (negate)
    for (auto& c : det) c = F.neg(c);
  det.resize(n + 1, 0);
  return det;
}

FFReduction reduce_pencil(const Pencil& p, const FiniteField& field) {
  FFReduction r{FFForm::reduce(p.f(), field), FFForm::reduce(p.g(), field), false, {}};
  FPoly det = ff_det_form(r.f, r.g);
  const std::size_t d = det.size() - 1;
  trim(det);
  if (det.empty()) {
    r.reason = "det-vanishes";
    return r;
  }
  if (d - (det.size() - 1) >= 2) {
    r.reason = "degree-drop";
    return r;
  }
  FPoly deriv;
  for (std::size_t i = 1; i < det.size(); ++i) deriv.push_back(field.mul(field.from_integer(Integer(i)), det[i]));
  trim(deriv);
  if (det.size() > 1 && pgcd(det, deriv, field).size() > 1) {
    r.reason = "repeated-root";
    return r;
  }
  r.smooth = true;
  return r;
}

FFPropositionReport verify_ff_propositions(const Pencil& p, const FiniteField& field) {
  FFPropositionReport rep;
  rep.n = p.n();
  rep.q = field.q();
  const FFReduction red = reduce_pencil(p, field);
  if (!red.smooth) {
    rep.skipped = true;
    rep.skip_reason = "reduction not smooth: " + red.reason;
    return rep;
  }
  bool ok = true;
  if (rep.n >= 4) {
    rep.point = find_point(red.f, red.g);
    ok = ok && rep.point.has_value();
  }
  if (rep.n == 4 || rep.n == 5) rep.witt_floor = 2;
  if (rep.n == 6 || rep.n == 7) rep.witt_floor = 3;
  rep.hyperbolic_required = rep.n == 5 && field.q() > 30;
  rep.min_member_witt = rep.n + 1;
  std::vector<FFVector> params;
  for (Elem t = 0; t < field.q(); ++t) params.push_back({1, t});
  params.push_back({0, 1});
  for (const auto& par : params) {
    const FFForm m = FFForm::combine(par[0], red.f, par[1], red.g);
    if (m.determinant() == 0) continue;
    const WittIndexResult w = ff_witt_index(m);
    rep.members.push_back({par, w});
    rep.min_member_witt = std::min(rep.min_member_witt, w.index);
    if (w.index < rep.witt_floor) rep.floor_holds = false;
    if (!rep.hyperbolic_member && w.anisotropic_dim == 0) rep.hyperbolic_member = par;
  }
  ok = ok && rep.floor_holds;
  if (rep.hyperbolic_required) ok = ok && rep.hyperbolic_member.has_value();
  rep.ok = ok;
  return rep;
}

}  // namespace qp
