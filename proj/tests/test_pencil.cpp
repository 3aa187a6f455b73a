#include <random>

#include "doctest.h"
#include "qp/arith.hpp"
#include "qp/errors.hpp"
#include "qp/pencil.hpp"

using namespace qp;

namespace {

QuadraticForm diag(RatVector e) { return QuadraticForm::diagonal(e); }

const QuadraticForm kXY(RatMatrix{{0, Rational(1, 2)}, {Rational(1, 2), 0}});

QuadraticForm random_form(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> c(-bound, bound);
  RatVector m;
  for (std::size_t k = 0; k < n * (n + 1) / 2; ++k) m.push_back(c(rng));
  return QuadraticForm::from_monomials(n, m);
}

Pencil random_smooth_pencil(std::mt19937_64& rng, std::size_t n, int bound) {
  while (true) {
    Pencil p(random_form(rng, n + 1, bound), random_form(rng, n + 1, bound));
    if (is_smooth(p).smooth) return p;
  }
}

std::size_t gap(const RealSignature& s) {
  return s.positives > s.negatives ? s.positives - s.negatives : s.negatives - s.positives;
}

}  // namespace

TEST_CASE("member parameters normalize") {
  CHECK(MemberParameter(2, 4) == MemberParameter(-1, -2));
  CHECK(MemberParameter(Rational(1, 2), Rational(1, 3)) == MemberParameter(3, 2));
  CHECK(MemberParameter(0, -5).mu() == 1);
  CHECK(MemberParameter::affine(make_rational(-7, 24)).label() == "24:-7");
  CHECK_THROWS_AS(MemberParameter(0, 0), DomainError);
  const auto ps = parameters_up_to(3);
  CHECK(ps.front() == MemberParameter(1, 0));
  CHECK(ps[1] == MemberParameter(1, 1));
  CHECK(ps[2] == MemberParameter(1, -1));
  CHECK(ps[3] == MemberParameter(0, 1));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) CHECK_FALSE(ps[i] == ps[j]);
  CHECK(ps.size() == 4 + 4 + 8);
}

TEST_CASE("build_pencil examples") {
  const Pencil a(diag({1, 1, 1, 1}), diag({1, 2, 3, 4}));
  CHECK(a.det_form() == RatVector{1, 10, 35, 50, 24});
  CHECK(a.n() == 3);
  const Pencil b(diag({1, 1}), diag({1, 1}));
  CHECK(b.det_form() == RatVector{1, 2, 1});
  const Pencil c(kXY, diag({1, -1}));
  CHECK(c.det_form() == RatVector{Rational(-1, 4), 0, -1});
  CHECK_THROWS_AS(Pencil(diag({1, 1}), diag({1, 1, 1})), DimensionError);
}

TEST_CASE("det_form matches member determinants and swapping") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 2 + trial % 6;
    const Pencil p(random_form(rng, dim, 5), random_form(rng, dim, 5));
    for (int k = 0; k < 10; ++k) {
      const Integer l = c(rng), m = c(rng);
      if (l == 0 && m == 0) continue;
      CHECK(p.det_at(l, m) == det_exact(Rational(l) * p.f().gram() + Rational(m) * p.g().gram()));
    }
    const Pencil q(p.g(), p.f());
    CHECK(q.det_form() == RatVector(p.det_form().rbegin(), p.det_form().rend()));
  }
}

TEST_CASE("is_smooth examples") {
  CHECK(is_smooth(Pencil(diag({1, 1, 1, 1}), diag({1, 2, 3, 4}))).smooth);
  const auto same = is_smooth(Pencil(diag({1, 2, 3}), diag({1, 2, 3})));
  CHECK_FALSE(same.smooth);
  CHECK(same.diagnosis == "repeated-root");
  CHECK(is_smooth(Pencil(diag({1, 1, 0}), diag({0, 1, 1}))).smooth);
  const auto zero = is_smooth(Pencil(diag({1, 0}), diag({1, 0})));
  CHECK(zero.diagnosis == "identically-zero");
  const auto drop = is_smooth(Pencil(diag({1, 1, 1}), diag({1, 0, 0})));
  CHECK(drop.diagnosis == "degree-drop");
}

TEST_CASE("smoothness is invariant under changes of variables and of parameters") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 3 + trial % 3;
    const Pencil p(random_form(rng, dim, 3), random_form(rng, dim, 3));
    RatMatrix u(dim, dim);
    do {
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) u(i, j) = c(rng);
    } while (det_exact(u) == 0);
    const Pencil moved(p.f().transformed(u), p.g().transformed(u));
    CHECK(is_smooth(moved).smooth == is_smooth(p).smooth);
    // (f, g) -> (2f + g, f - g) is an invertible reparametrization.
    const Pencil re(p.f().scaled(2) + p.g(), p.f() + p.g().scaled(-1));
    CHECK(is_smooth(re).smooth == is_smooth(p).smooth);
  }
}

TEST_CASE("member examples") {
  const Pencil p(diag({1, 1, 1, 1}), diag({1, 2, 3, 4}));
  CHECK(member(p, MemberParameter(1, 0)) == p.f());
  CHECK(member(p, MemberParameter(0, 1)) == p.g());
  CHECK(member(p, MemberParameter(1, 1)) == diag({2, 3, 4, 5}));
}

TEST_CASE("stratify examples") {
  const auto a = stratify(Pencil(diag({1, 1, 1, 1}), diag({1, 2, 3, 4})));
  REQUIRE(a.rational.size() == 4);
  for (const auto& s : a.rational) {
    CHECK(s.member_rank == 3);
    CHECK(s.multiplicity == 1);
  }
  CHECK(a.irrational.empty());
  const auto b = stratify(Pencil(diag({1, 1, 1, 1, 1}), diag({1, 2, 3, 4, 5})));
  REQUIRE(b.rational.size() == 5);
  for (const auto& s : b.rational) CHECK(s.member_rank == 4);
  // det(f + t g) = -2 (1 + t)^2 (2 + t)
  const Pencil c(diag({1, 1, 2, -2}), diag({1, 1, 1, 0}));
  const auto sc = stratify(c);
  CHECK_FALSE(is_smooth(c).smooth);
  bool saw_double = false;
  for (const auto& s : sc.rational)
    if (s.parameter == MemberParameter::affine(-1)) {
      CHECK(s.multiplicity == 2);
      CHECK(s.member_rank == 2);
      saw_double = true;
    }
  CHECK(saw_double);
  const auto z = stratify(Pencil(diag({1, 0}), diag({1, 0})));
  CHECK(z.identically_zero);
}

TEST_CASE("stratify reports irrational factors") {
  // det(f + t g) for f = diag(-2, 1, 1), g = diag(0, 1, 0) plus a cross term.
  const Pencil p(diag({1, 1, -2}), QuadraticForm(RatMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  const auto s = stratify(p);
  int total = 0;
  for (const auto& r : s.rational) total += r.multiplicity;
  for (const auto& r : s.irrational) total += r.multiplicity * r.factor.degree();
  CHECK(total == 3);
}

TEST_CASE("real_half_hyperbolic_member examples") {
  const Pencil p(diag({1, 1, 1, 1}), diag({1, 2, 3, 4}));
  const auto w = real_half_hyperbolic_member(p);
  CHECK(w.signature == RealSignature{2, 2, 0});
  // The member f + t g has signature (2,2) exactly for -1/2 < t < -1/3.
  const Rational t = Rational(w.parameter.mu()) / Rational(w.parameter.lambda());
  CHECK(t > Rational(-1, 2));
  CHECK(t < Rational(-1, 3));
  CHECK(signature(member(p, MemberParameter::affine(make_rational(-7, 24)))) == RealSignature{3, 1, 0});

  const auto z = real_half_hyperbolic_member(Pencil(diag({1, -1, 1, -1}), diag({1, 2, 3, 4})));
  CHECK(z.parameter == MemberParameter(1, 0));
  CHECK(z.signature == RealSignature{2, 2, 0});

  const auto five = real_half_hyperbolic_member(Pencil(diag({1, 1, 1, 1, 1}), diag({1, 2, 3, 4, 5})));
  CHECK(gap(five.signature) == 1);

  CHECK_THROWS_AS(real_half_hyperbolic_member(Pencil(diag({1, 2}), diag({1, 2}))), PreconditionError);
}

TEST_CASE("real walk succeeds on random smooth pencils") {
  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 7; ++n)
    for (int trial = 0; trial < 15; ++trial) {
      const Pencil p = random_smooth_pencil(rng, n, 9);
      const auto w = real_half_hyperbolic_member(p);
      CHECK(p.det_at(w.parameter) != 0);
      CHECK(signature(member(p, w.parameter)) == w.signature);
      CHECK(gap(w.signature) <= 1);
    }
}

TEST_CASE("signature moves by one across a simple real root") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const Pencil p = random_smooth_pencil(rng, 2 + trial % 5, 6);
    const IntPolynomial poly = p.affine_det_poly();
    const auto roots = isolate_real_roots(poly);
    for (const auto& iv : roots) {
      const auto left = signature(member(p, MemberParameter::affine(iv.lo)));
      const auto right = signature(member(p, MemberParameter::affine(iv.hi)));
      const long dp = static_cast<long>(left.positives) - static_cast<long>(right.positives);
      const long dn = static_cast<long>(left.negatives) - static_cast<long>(right.negatives);
      CHECK((dp == 1 || dp == -1));
      CHECK(dn == -dp);
    }
  }
}

TEST_CASE("padic_nonsquare_det_member") {
  const Place p5 = Place::finite(5), p3 = Place::finite(3), p7 = Place::finite(7);
  // det(f + t g) = t + 1
  const Pencil a(diag({1}), diag({1}));
  const auto ta = padic_nonsquare_det_member(a, p5);
  CHECK_FALSE(square_class(a.det_at(ta), p5).is_square());
  // det = t
  const Pencil b(diag({0}), diag({1}));
  const auto tb = padic_nonsquare_det_member(b, p3);
  CHECK_FALSE(square_class(b.det_at(tb), p3).is_square());
  CHECK(b.det_at(MemberParameter::affine(3)) == 3);
  // det = t^2 - 1
  const Pencil c(diag({1, -1}), diag({1, 1}));
  CHECK(c.det_form() == RatVector{-1, 0, 1});
  const auto tc = padic_nonsquare_det_member(c, p7);
  CHECK_FALSE(square_class(c.det_at(tc), p7).is_square());
  CHECK(legendre(3, 7) == -1);

  // No rational root: det = -1 - t^2.
  CHECK_THROWS_AS(padic_nonsquare_det_member(Pencil(diag({1, -1}), QuadraticForm(RatMatrix{{0, 1}, {1, 0}})), p5),
                  PreconditionError);
  CHECK_THROWS_AS(padic_nonsquare_det_member(a, Place::real()), PreconditionError);
}

TEST_CASE("nonsquare determinant members of rank 8 contain 3H locally") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    // Plant a rational root: det(f) = 0 via a radical vector of f.
    QuadraticForm f = random_form(rng, 8, 4);
    RatMatrix gram = f.gram();
    for (std::size_t i = 0; i < 8; ++i) gram(7, i) = gram(i, 7) = 0;
    const Pencil p(QuadraticForm(gram), random_form(rng, 8, 4));
    if (!is_smooth(p).smooth) continue;
    for (long prime : {2L, 3L, 5L}) {
      const Place v = Place::finite(prime);
      const auto t = padic_nonsquare_det_member(p, v);
      const auto w = local_witt_index(member(p, t), v);
      CHECK(w.index >= 3);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("member_with_local_witt") {
  const Pencil p(diag({1, 1, 1, 1}), diag({1, 2, 3, 4}));
  const auto w = member_with_local_witt(p, Place::finite(5), 2, 20);
  REQUIRE(w.has_value());
  CHECK(local_witt_index(member(p, w->parameter), Place::finite(5)).index >= 2);
  const auto z = member_with_local_witt(p, Place::finite(5), 0, 5);
  REQUIRE(z.has_value());
  CHECK(z->parameter == MemberParameter(1, 0));
  // Two definite forms in two or more variables always span indefinite
  // members (f - c g for c between the eigenvalue ratios), so the
  // definite-pencil case needs a single variable.
  CHECK(member_with_local_witt(Pencil(diag({1, 1, 1}), diag({1, 2, 3})), Place::real(), 1, 15).has_value());
  CHECK_FALSE(member_with_local_witt(Pencil(diag({1}), diag({2})), Place::real(), 1, 15).has_value());
}

TEST_CASE("member_with_global_witt") {
  const Pencil p(diag({1, -1, 1, -1}), diag({1, 2, 3, 4}));
  const auto w = member_with_global_witt(p, 2, 10);
  REQUIRE(w.has_value());
  CHECK(w->parameter == MemberParameter(1, 0));
  CHECK(w->witt.witt.index == 2);
  CHECK_FALSE(member_with_global_witt(p, 3, 10).has_value());
}

TEST_CASE("scan order does not depend on the thread count") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const Pencil p = random_smooth_pencil(rng, 4, 9);
    const auto first = member_with_local_witt(p, Place::finite(2), 2, 30);
    const auto params = parameters_up_to(30);
    std::optional<MemberParameter> serial;
    for (const auto& t : params) {
      if (p.det_at(t) == 0) continue;
      if (local_witt_index(member(p, t), Place::finite(2)).index >= 2) {
        serial = t;
        break;
      }
    }
    CHECK(first.has_value() == serial.has_value());
    if (first && serial) CHECK(first->parameter == *serial);
  }
}

TEST_CASE("discriminant_curve examples") {
  const auto a = discriminant_curve(Pencil(diag({1, 1, 1, 1}), diag({1, 2, 3, 4})), 1);
  CHECK(a.poly == IntPolynomial{24, 50, 35, 10, 1});
  CHECK(a.scale == 1);
  CHECK(a.genus == 1);
  CHECK(a.squarefree);
  const auto b = discriminant_curve(Pencil(diag({1, 1, 1, 1, 1}), diag({1, 2, 3, 4, 5})), -1);
  CHECK(b.degree == 5);
  CHECK(b.genus == 2);
  CHECK(b.scale == -1);
  const auto c = discriminant_curve(Pencil(diag({1, 2}), diag({1, 2})), 1);
  CHECK_FALSE(c.squarefree);
  CHECK(discriminant_curve(Pencil(diag({1, 0}), diag({1, 0})), 1).identically_zero);
}

TEST_CASE("curve_point_search examples") {
  const auto cubic = curve_point_search(hyperelliptic_model({0, -1, 0, 1}, 1), 10);
  CHECK(cubic.ramification == std::vector<Rational>{-1, 0, 1});
  CHECK(cubic.at_infinity == 1);
  const auto quartic = curve_point_search(hyperelliptic_model({1, 0, 0, 0, 1}, 1), 10);
  CHECK(std::find(quartic.affine.begin(), quartic.affine.end(), CurvePoint{0, 1}) != quartic.affine.end());
  CHECK(std::find(quartic.affine.begin(), quartic.affine.end(), CurvePoint{0, -1}) != quartic.affine.end());
  CHECK(quartic.at_infinity == 2);
  const auto prod = curve_point_search(hyperelliptic_model({24, 50, 35, 10, 1}, 1), 12);
  for (const auto& pt : prod.affine) {
    CHECK(pt.t != 0);
    CHECK(pt.t != -5);
    const Rational v = IntPolynomial{24, 50, 35, 10, 1}.evaluate(pt.t);
    CHECK(pt.y * pt.y == v);
  }
  // Brute-force cross-check of the integer kernel.
  const HyperellipticModel m = hyperelliptic_model({-3, 2, 0, 1}, -1);
  const auto pts = curve_point_search(m, 8);
  std::size_t count = 0;
  for (long b = 1; b <= 8; ++b)
    for (long a = -8; a <= 8; ++a) {
      if (std::gcd(a, b) != 1) continue;
      const Rational t = make_rational(a, b);
      const Rational v = Rational(m.scale) * m.poly.evaluate(t);
      if (v > 0 && is_rational_square(v)) count += 2;
    }
  CHECK(pts.affine.size() == count);
}

TEST_CASE("odd_degree_point_detector") {
  CHECK(odd_degree_point_detector(hyperelliptic_model({1, 2, 0, 0, 0, 1}, 1)).verdict == OddDegreeVerdict::yes);
  // (t + 1)(t^3 + 2)
  const auto r = odd_degree_point_detector(hyperelliptic_model({2, 2, 0, 1, 1}, 1));
  CHECK(r.verdict == OddDegreeVerdict::yes);
  CHECK(r.witness_kind == "rational-root");
  CHECK(*r.root == -1);
  const IntPolynomial unk = IntPolynomial{1, 0, 1} * IntPolynomial{1, 0, 0, 0, 1};
  RatVector uc(unk.coefficients().begin(), unk.coefficients().end());
  CHECK(odd_degree_point_detector(hyperelliptic_model(uc, 1)).verdict == OddDegreeVerdict::unknown);
  const IntPolynomial cubic = IntPolynomial{-2, 0, 0, 1} * IntPolynomial{1, 0, 0, 1, 1};
  RatVector cc(cubic.coefficients().begin(), cubic.coefficients().end());
  // degree 7: odd
  CHECK(odd_degree_point_detector(hyperelliptic_model(cc, 1)).witness_kind == "infinity");
  const IntPolynomial six = IntPolynomial{-2, 0, 0, 1} * IntPolynomial{3, 0, 0, 1};
  RatVector sc(six.coefficients().begin(), six.coefficients().end());
  const auto s = odd_degree_point_detector(hyperelliptic_model(sc, 1));
  CHECK(s.witness_kind == "odd-factor");
  CHECK(s.factor->degree() == 3);
  const IntPolynomial two = IntPolynomial{1, 0, 1} * IntPolynomial{2, 0, 1};
  RatVector tc(two.coefficients().begin(), two.coefficients().end());
  CHECK(odd_degree_point_detector(hyperelliptic_model(tc, 1)).verdict == OddDegreeVerdict::no_evidence);
}
