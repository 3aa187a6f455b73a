#include "qp/pencil.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qp/arith.hpp"
#include "qp/errors.hpp"
#include "qp/parallel.hpp"

namespace qp {

// ---------------------------------------------------------------- parameters

MemberParameter::MemberParameter(const Rational& lambda, const Rational& mu) {
  if (lambda == 0 && mu == 0) throw DomainError("member parameter (0:0)");
  const Integer den = lcm(lambda.get_den(), mu.get_den());
  Integer l = lambda.get_num() * (den / lambda.get_den());
  Integer m = mu.get_num() * (den / mu.get_den());
  const Integer g = gcd(l, m);
  l /= g;
  m /= g;
  if (l < 0 || (l == 0 && m < 0)) {
    l = -l;
    m = -m;
  }
  lambda_ = l;
  mu_ = m;
}

Integer MemberParameter::height() const {
  const Integer a = abs_int(lambda_), b = abs_int(mu_);
  return a > b ? a : b;
}

std::string MemberParameter::label() const { return lambda_.get_str() + ":" + mu_.get_str(); }

std::vector<MemberParameter> parameters_up_to(long bound) {
  std::vector<MemberParameter> out;
  for (long h = 1; h <= bound; ++h) {
    for (long m = 0; m <= h; ++m)
      for (long s : {1L, -1L}) {
        if (m == 0 && s < 0) continue;
        if (std::gcd(h, m) == 1) out.emplace_back(h, s * m);
      }
    for (long l = h - 1; l >= 1; --l)
      if (std::gcd(l, h) == 1) {
        out.emplace_back(l, h);
        out.emplace_back(l, -h);
      }
    if (h == 1) out.emplace_back(0, 1);
  }
  return out;
}

// ---------------------------------------------------------------- pencil

namespace {

/// Positive rational multiple of the coefficient vector that is a primitive
/// integer vector (signs kept).
IntPolynomial positive_multiple(const RatVector& coeffs) {
  const Integer den = common_denominator(coeffs);
  IntVector ints;
  Integer g = 0;
  for (const auto& c : coeffs) {
    ints.push_back(c.get_num() * (den / c.get_den()));
    g = gcd(g, ints.back());
  }
  if (g > 1)
    for (auto& z : ints) z /= g;
  return IntPolynomial(ints);
}

Rational det_of_member(const QuadraticForm& f, const QuadraticForm& g, const Rational& l, const Rational& m) {
  return det_exact(l * f.gram() + m * g.gram());
}

}  // namespace

Pencil::Pencil(QuadraticForm f, QuadraticForm g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.dim() != g_.dim()) throw DimensionError("pencil forms have different dimensions");
  const std::size_t d = f_.dim();
  // det(f + t g) has degree <= d: interpolate at t = 0..d and check at d + 1.
  RatMatrix vander(d + 1, d + 1);
  RatVector values(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    Rational x = 1;
    for (std::size_t j = 0; j <= d; ++j) {
      vander(i, j) = x;
      x *= static_cast<long>(i);
    }
    values[i] = det_of_member(f_, g_, 1, static_cast<long>(i));
  }
  det_ = *inverse(vander) * values;
  if (det_at(1, static_cast<long>(d + 1)) != det_of_member(f_, g_, 1, static_cast<long>(d + 1)))
    throw InternalError("determinant interpolation check failed");
}

bool Pencil::det_is_zero() const {
  return std::all_of(det_.begin(), det_.end(), [](const Rational& c) { return c == 0; });
}

Rational Pencil::det_at(const Integer& lambda, const Integer& mu) const {
  // Horner in mu / lambda, homogenized.
  Rational acc = 0;
  Integer lpow = 1;
  const std::size_t d = det_.size() - 1;
  for (std::size_t i = 0; i <= d; ++i) {
    acc = acc * mu + det_[d - i] * lpow;
    lpow *= lambda;
  }
  return acc;
}

IntPolynomial Pencil::affine_det_poly() const { return positive_multiple(det_); }

Pencil build_pencil(const QuadraticForm& f, const QuadraticForm& g) { return Pencil(f, g); }

QuadraticForm member(const Pencil& p, const MemberParameter& t) {
  return QuadraticForm(Rational(t.lambda()) * p.f().gram() + Rational(t.mu()) * p.g().gram());
}

// ---------------------------------------------------------------- smoothness

namespace {

int order_at_zero(const IntPolynomial& p) {
  int k = 0;
  while (p.coeff(k) == 0) ++k;
  return k;
}

}  // namespace

SmoothnessReport is_smooth(const Pencil& p) {
  if (p.det_is_zero()) return {false, "identically-zero"};
  const IntPolynomial poly = p.affine_det_poly();
  const int d = static_cast<int>(p.n()) + 1;
  const int at_infinity = d - poly.degree();  // root (0:1)
  const int at_zero = order_at_zero(poly);    // root (1:0)
  if (at_infinity >= 2 || at_zero >= 2) return {false, "degree-drop"};
  if (poly.degree() > 0 && !is_squarefree(poly)) return {false, "repeated-root"};
  return {true, "smooth"};
}

// ---------------------------------------------------------------- stratify

namespace {

int divide_out(IntPolynomial& p, const IntPolynomial& factor) {
  int mult = 0;
  while (p.degree() >= factor.degree()) {
    auto q = exact_divide(p, factor);
    if (!q) break;
    p = *q;
    ++mult;
  }
  return mult;
}

}  // namespace

StratificationReport stratify(const Pencil& p) {
  StratificationReport rep;
  if (p.det_is_zero()) {
    rep.identically_zero = true;
    return rep;
  }
  IntPolynomial poly = p.affine_det_poly();
  const int d = static_cast<int>(p.n()) + 1;
  if (poly.degree() > 0) {
    for (const auto& r : rational_roots(poly)) {
      const MemberParameter t = MemberParameter::affine(r);
      const int mult = divide_out(poly, IntPolynomial::linear_factor(r).primitive_part());
      rep.rational.push_back({t, mult, form_rank(member(p, t))});
    }
  }
  const int at_infinity = d - p.affine_det_poly().degree();
  if (at_infinity > 0) {
    const MemberParameter t(0, 1);
    rep.rational.push_back({t, at_infinity, form_rank(p.g())});
  }
  while (poly.degree() > 0) {
    const auto h = kronecker_factor_upto(poly.primitive_part(), 3);
    IntPolynomial factor = h ? h->primitive_part() : poly.primitive_part();
    const bool proven = h.has_value() || factor.degree() <= 7;
    const int mult = divide_out(poly, factor);
    IrrationalStratum s{factor, std::max(mult, 1), proven, {}};
    s.real_roots = isolate_real_roots(squarefree_part(factor));
    rep.irrational.push_back(std::move(s));
    if (mult == 0) break;
  }
  return rep;
}

// ---------------------------------------------------------------- real walk

SignedMember real_half_hyperbolic_member(const Pencil& p) {
  const SmoothnessReport s = is_smooth(p);
  if (!s.smooth) throw PreconditionError("real_half_hyperbolic_member: pencil is not smooth (" + s.diagnosis + ")");
  const IntPolynomial poly = p.affine_det_poly();

  std::vector<MemberParameter> candidates;
  if (poly.coeff(0) != 0) candidates.push_back(MemberParameter::affine(0));
  if (poly.degree() > 0) {
    const auto roots = isolate_real_roots(poly);
    if (roots.empty()) {
      candidates.push_back(MemberParameter::affine(1));
    } else {
      Rational left = roots.front().lo;
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), left.get_num_mpz_t(), left.get_den_mpz_t());
      candidates.push_back(MemberParameter::affine(Rational(fl)));
      for (std::size_t i = 0; i + 1 < roots.size(); ++i)
        candidates.push_back(MemberParameter::affine(simplest_rational_between(roots[i].hi, roots[i + 1].lo)));
      Rational right = roots.back().hi;
      mpz_class ce;
      mpz_cdiv_q(ce.get_mpz_t(), right.get_num_mpz_t(), right.get_den_mpz_t());
      candidates.push_back(MemberParameter::affine(Rational(ce)));
    }
  }
  if (p.det_at(0, 1) != 0) candidates.push_back(MemberParameter(0, 1));

  for (const auto& t : candidates) {
    if (p.det_at(t) == 0) continue;
    const RealSignature sig = signature(member(p, t));
    const std::size_t gap = sig.positives > sig.negatives ? sig.positives - sig.negatives : sig.negatives - sig.positives;
    if (gap <= 1) return {t, sig};
  }
  std::ostringstream dump;
  dump << "real_half_hyperbolic_member: no candidate qualified; det(f+tg) = " << poly.to_string() << "; candidates";
  for (const auto& t : candidates) dump << ' ' << t.label();
  throw InternalError(dump.str());
}

// ---------------------------------------------------------------- p-adic

namespace {

std::vector<MemberParameter> rational_roots_projective(const Pencil& p) {
  std::vector<MemberParameter> out;
  const IntPolynomial poly = p.affine_det_poly();
  if (poly.degree() > 0)
    for (const auto& r : rational_roots(poly)) out.push_back(MemberParameter::affine(r));
  if (poly.degree() < static_cast<int>(p.n()) + 1) out.emplace_back(0, 1);
  return out;
}

bool nonsquare_det(const Pencil& p, const Integer& l, const Integer& m, const Place& v) {
  const Rational d = p.det_at(l, m);
  return d != 0 && !square_class(d, v).is_square();
}

}  // namespace

MemberParameter padic_nonsquare_det_member(const Pencil& p, const Place& v) {
  if (v.is_real()) throw PreconditionError("padic_nonsquare_det_member: finite place required");
  if (p.det_is_zero() || !is_smooth(p).smooth)
    throw PreconditionError("padic_nonsquare_det_member: determinant is not squarefree");
  const auto roots = rational_roots_projective(p);
  if (roots.empty()) throw PreconditionError("padic_nonsquare_det_member: determinant has no rational root");

  for (const auto& t : parameters_up_to(12))
    if (nonsquare_det(p, t.lambda(), t.mu(), v)) return t;

  // Near a simple root (a:b): with (c:d) completing it to a basis, the
  // determinant at (a + s c : b + s d) is s times a unit for s -> 0, so its
  // valuation is eventually k + const for s = p^k.
  const Integer& a = roots.front().lambda();
  const Integer& b = roots.front().mu();
  Integer g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // a x + b y = 1, so (c, d) = (-y, x) gives a d - b c = 1.
  const Integer c = -y, d = x;
  Integer s = v.prime();
  for (int k = 1; k <= 400; ++k, s *= v.prime()) {
    const MemberParameter t(Rational(a + s * c), Rational(b + s * d));
    if (nonsquare_det(p, t.lambda(), t.mu(), v)) return t;
  }
  throw InternalError("padic_nonsquare_det_member: construction near a simple root failed");
}

// ---------------------------------------------------------------- scans

namespace {

void require_smooth(const Pencil& p, const char* op) {
  const SmoothnessReport s = is_smooth(p);
  if (!s.smooth) throw PreconditionError(std::string(op) + ": pencil is not smooth (" + s.diagnosis + ")");
}

}  // namespace

std::optional<LocalWittWitness> member_with_local_witt(const Pencil& p, const Place& v, std::size_t r, long bound) {
  require_smooth(p, "member_with_local_witt");
  if (r > (p.n() + 1) / 2) return std::nullopt;
  const auto params = parameters_up_to(bound);
  std::vector<WittIndexResult> results(params.size());
  const auto idx = first_accepted(params.size(), [&](std::size_t i) {
    if (p.det_at(params[i]) == 0) return false;
    results[i] = local_witt_index(member(p, params[i]), v);
    return results[i].index >= r;
  });
  if (!idx) return std::nullopt;
  return LocalWittWitness{params[*idx], results[*idx]};
}

std::optional<GlobalWittWitness> member_with_global_witt(const Pencil& p, std::size_t r, long bound) {
  require_smooth(p, "member_with_global_witt");
  if (r > (p.n() + 1) / 2) return std::nullopt;
  const auto params = parameters_up_to(bound);
  std::vector<std::optional<GlobalWittResult>> results(params.size());
  const auto idx = first_accepted(params.size(), [&](std::size_t i) {
    if (p.det_at(params[i]) == 0) return false;
    const QuadraticForm q = member(p, params[i]);
    // Cheap necessary conditions first: the real place and 2.
    if (local_witt_index(q, Place::real()).index < r) return false;
    if (local_witt_index(q, Place::finite(2)).index < r) return false;
    results[i] = global_witt_index(q);
    return results[i]->witt.index >= r;
  });
  if (!idx) return std::nullopt;
  return GlobalWittWitness{params[*idx], *results[*idx]};
}

// ---------------------------------------------------------------- curve

HyperellipticModel hyperelliptic_model(const RatVector& coeffs, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("hyperelliptic model: sign must be +1 or -1");
  HyperellipticModel m;
  m.sign = sign;
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; })) {
    m.identically_zero = true;
    return m;
  }
  m.poly = primitive_from_rational(coeffs);
  // sign * coeffs = content * poly with a rational content of either sign.
  const int top = m.poly.degree();
  const Rational content = sign * coeffs[static_cast<std::size_t>(top)] / Rational(m.poly.leading());
  m.scale = squarefree_kernel(content);
  m.degree = top;
  m.genus = top >= 1 ? (top - 1) / 2 : 0;
  m.squarefree = top <= 0 || is_squarefree(m.poly);
  return m;
}

HyperellipticModel discriminant_curve(const Pencil& p, int sign) {
  // Chart (t : 1): det(t f + g) = sum_i c_i t^(d - i).
  return hyperelliptic_model(RatVector(p.det_form().rbegin(), p.det_form().rend()), sign);
}

CurvePoints curve_point_search(const HyperellipticModel& m, long height_bound) {
  if (m.identically_zero || !m.squarefree) throw PreconditionError("curve_point_search: model is not squarefree");
  CurvePoints out;
  const int deg = m.degree;
  const int even = deg + (deg % 2);
  const auto& c = m.poly.coefficients();
  std::vector<std::vector<CurvePoint>> by_den(static_cast<std::size_t>(height_bound));
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 1; b <= height_bound; ++b) {
    auto& bucket = by_den[static_cast<std::size_t>(b - 1)];
    std::vector<Integer> bpow(static_cast<std::size_t>(even) + 1);
    bpow[0] = 1;
    for (int i = 1; i <= even; ++i) bpow[i] = bpow[i - 1] * b;
    Integer root_b = bpow[static_cast<std::size_t>(even / 2)];
    for (long a = -height_bound; a <= height_bound; ++a) {
      if (std::gcd(a, b) != 1) continue;
      // b^even * poly(a/b) as an integer.
      Integer h = 0, apow = 1;
      for (int i = 0; i <= deg; ++i) {
        h += c[static_cast<std::size_t>(i)] * apow * bpow[static_cast<std::size_t>(even - i)];
        apow *= a;
      }
      const Integer val = m.scale * h;
      if (val <= 0 || !is_perfect_square(val)) continue;
      Integer s;
      mpz_sqrt(s.get_mpz_t(), val.get_mpz_t());
      const Rational t = make_rational(a, b);
      const Rational y = make_rational(s, root_b);
      bucket.push_back({t, -y});
      bucket.push_back({t, y});
    }
  }
  for (auto& bucket : by_den) out.affine.insert(out.affine.end(), bucket.begin(), bucket.end());
  std::sort(out.affine.begin(), out.affine.end(), [](const CurvePoint& x, const CurvePoint& y) {
    return x.t != y.t ? x.t < y.t : x.y < y.y;
  });
  if (deg > 0) out.ramification = rational_roots(m.poly);
  if (deg % 2 == 1) {
    out.at_infinity = 1;
  } else if (deg > 0) {
    out.at_infinity = is_perfect_square(m.scale * m.poly.leading()) ? 2 : 0;
  }
  return out;
}

OddDegreeReport odd_degree_point_detector(const HyperellipticModel& m) {
  if (m.identically_zero || !m.squarefree) throw PreconditionError("odd_degree_point_detector: model is not squarefree");
  OddDegreeReport rep;
  if (m.degree % 2 == 1) {
    rep.verdict = OddDegreeVerdict::yes;
    rep.witness_kind = "infinity";
    return rep;
  }
  if (m.degree <= 0) {
    rep.verdict = OddDegreeVerdict::no_evidence;
    return rep;
  }
  const auto roots = rational_roots(m.poly);
  if (!roots.empty()) {
    rep.verdict = OddDegreeVerdict::yes;
    rep.witness_kind = "rational-root";
    rep.root = roots.front();
    return rep;
  }
  IntPolynomial rest = m.poly;
  while (rest.degree() > 0) {
    auto h = kronecker_factor_upto(rest, 3);
    // Without a proper factor, a cubic or quadratic rest is irreducible.
    if (!h && rest.degree() <= 3) h = rest;
    if (!h) break;
    const IntPolynomial f = h->primitive_part();
    if (f.degree() % 2 == 1) {
      rep.verdict = OddDegreeVerdict::yes;
      rep.witness_kind = "odd-factor";
      rep.factor = f;
      return rep;
    }
    rest = *exact_divide(rest, f);
  }
  rep.verdict = rest.degree() <= 0 ? OddDegreeVerdict::no_evidence : OddDegreeVerdict::unknown;
  return rep;
}

std::string to_string(OddDegreeVerdict v) {
  switch (v) {
    case OddDegreeVerdict::yes:
      return "yes";
    case OddDegreeVerdict::no_evidence:
      return "no-evidence";
    default:
      return "unknown";
  }
}

}  // namespace qp
