#include <random>

#include "doctest.h"
#include "qp/errors.hpp"
#include "qp/localglobal.hpp"
#include "qp/search.hpp"

using namespace qp;

namespace {

QuadraticForm diag(RatVector e) { return QuadraticForm::diagonal(e); }

QuadraticForm monomials(std::size_t n, RatVector c) { return QuadraticForm::from_monomials(n, c); }

QuadraticForm random_form(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> c(-bound, bound);
  RatVector m;
  for (std::size_t k = 0; k < n * (n + 1) / 2; ++k) m.push_back(c(rng));
  return QuadraticForm::from_monomials(n, m);
}

bool totally_isotropic(const QuadraticForm& q, const std::vector<IntVector>& basis) {
  for (const auto& a : basis)
    for (const auto& b : basis)
      if (q.bilinear(RatVector(a.begin(), a.end()), RatVector(b.begin(), b.end())) != 0) return false;
  std::vector<RatVector> cols;
  for (const auto& a : basis) cols.emplace_back(a.begin(), a.end());
  return cols.empty() || rank(RatMatrix::from_columns(cols)) == cols.size();
}

}  // namespace

TEST_CASE("projective points are primitive and sign normalized") {
  const auto p = ProjectivePoint::from({0, Rational(-2, 3), Rational(4, 5)});
  CHECK(p.coords == IntVector{0, 5, -6});
  CHECK(p.to_string() == "(0:5:-6)");
  CHECK(p.height() == 6);
  CHECK_THROWS_AS(ProjectivePoint::from({0, 0}), DomainError);
}

TEST_CASE("point_search examples") {
  // x0x1 + x2^2 - x3^2 and x0x2 + x1x3 + x4^2.
  RatVector fm(15, 0), gm(15, 0);
  fm[1] = 1;   // x0x1
  fm[9] = 1;   // x2^2
  fm[12] = -1; // x3^2
  gm[2] = 1;   // x0x2
  gm[7] = 1;   // x1x3
  gm[14] = 1;  // x4^2
  const auto pts = point_search(monomials(5, fm), monomials(5, gm), 1);
  CHECK(std::find(pts.begin(), pts.end(), ProjectivePoint{{1, 0, 0, 0, 0}}) != pts.end());
  for (const auto& p : pts) {
    CHECK(evaluate(monomials(5, fm), p.rational()) == 0);
    CHECK(evaluate(monomials(5, gm), p.rational()) == 0);
  }
  CHECK(point_search(diag({1, 1}), diag({1, 1}), 5).empty());
  CHECK_THROWS_AS(point_search(diag({1, 1}), diag({1, 1, 1}), 2), DimensionError);
}

TEST_CASE("point_search matches the serial reference") {
  const QuadraticForm f = diag({1, 1, -1});
  const QuadraticForm g = diag({2, 1, -3});
  CHECK(point_search(f, g, 12) == point_search_reference(f, g, 12));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 3 + trial % 3;
    // Put e0 on both quadrics so some points exist.
    auto f1 = random_form(rng, dim, 3), g1 = random_form(rng, dim, 3);
    RatVector fm = f1.monomials(), gm = g1.monomials();
    fm[0] = gm[0] = 0;
    const QuadraticForm a = monomials(dim, fm), b = monomials(dim, gm);
    const long bound = dim == 5 ? 2 : 4;
    const auto fast = point_search(a, b, bound);
    CHECK(fast == point_search_reference(a, b, bound));
    CHECK(std::find(fast.begin(), fast.end(), ProjectivePoint{IntVector(dim, 0)}) == fast.end());
  }
}

TEST_CASE("isotropic_vector examples") {
  auto r = isotropic_vector(diag({1, 1, -2}), 5);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.vector->coords == IntVector{1, 1, 1});
  r = isotropic_vector(diag({1, 1, 1}), 50);
  CHECK(r.status == SearchStatus::proven_none);
  CHECK_FALSE(r.vector);
  r = isotropic_vector(diag({1, 1, 1, -7, 1, -1}), 5);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.vector->coords == IntVector{0, 0, 0, 0, 1, 1});
  // Degenerate: a radical vector.
  r = isotropic_vector(diag({1, 0, 1}), 1);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.vector->coords == IntVector{0, 1, 0});
  // Anisotropic only at 2 and 7: still certified.
  CHECK(isotropic_vector(diag({1, 1, 1, -7}), 20).status == SearchStatus::proven_none);
}

TEST_CASE("isotropic_vector reaches large solutions through diagonal coordinates") {
  // x^2 + y^2 = 1009 z^2 needs |x| or |y| near 30.
  const auto r = isotropic_vector(diag({1, 1, -1009}), 100);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(evaluate(diag({1, 1, -1009}), r.vector->rational()) == 0);
  // Entries with square factors.
  const QuadraticForm q = diag({Rational(9, 4), 50, -2 * 97 * 97});
  const auto s = isotropic_vector(q, 200);
  REQUIRE(s.status == SearchStatus::found);
  CHECK(evaluate(q, s.vector->rational()) == 0);
}

TEST_CASE("isotropic_vector finds witnesses whenever the global index is positive") {
  std::mt19937_64 rng(11);
  int found = 0, total = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t dim = 3 + trial % 4;
    const QuadraticForm q = random_form(rng, dim, 6);
    if (!is_nondegenerate(q)) continue;
    const auto r = isotropic_vector(q, 60);
    const bool isotropic = global_witt_index(q).witt.index > 0;
    if (!isotropic) {
      CHECK(r.status == SearchStatus::proven_none);
      continue;
    }
    ++total;
    CHECK(r.status != SearchStatus::proven_none);
    if (r.status == SearchStatus::found) {
      ++found;
      CHECK(evaluate(q, r.vector->rational()) == 0);
    }
  }
  CHECK(found == total);
}

TEST_CASE("isotropic_plane examples") {
  auto r = isotropic_plane(diag({1, -1, 1, -1}), 3);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(totally_isotropic(diag({1, -1, 1, -1}), r.basis));
  CHECK(r.basis.size() == 2);
  CHECK(isotropic_plane(diag({3, 3, 3, 3}), 20).status == SearchStatus::proven_none);
  RatVector m(10, 0);
  m[1] = 1;  // x0x1
  m[8] = 1;  // x2x3
  const QuadraticForm h = monomials(4, m);
  r = isotropic_plane(h, 3);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(totally_isotropic(h, r.basis));
  // The first vector is e3 by the search order, then e1 in its orthogonal.
  CHECK(r.basis.front() == IntVector{0, 0, 0, 1});
}

TEST_CASE("found subspaces never exceed the Witt indices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 2 + trial % 7;
    const QuadraticForm q = random_form(rng, dim, 5);
    if (!is_nondegenerate(q)) continue;
    const auto basis = greedy_isotropic_subspace(q, dim, 30);
    CHECK(totally_isotropic(q, basis));
    const auto g = global_witt_index(q);
    CHECK(basis.size() <= g.witt.index);
    for (const auto& pw : g.critical) CHECK(basis.size() <= pw.witt.index);
  }
}

TEST_CASE("quadratic algebra arithmetic") {
  const QuadraticAlgebra a(0, 1);  // u^2 = -1
  CHECK(a.is_field());
  CHECK(a.mul({0, 1}, {0, 1}) == QuadElement{-1, 0});
  const QuadraticAlgebra s(0, -4);  // split: u = +-2
  CHECK_FALSE(s.is_field());
  CHECK(s.mul({1, 1}, {1, -1}) == QuadElement{-3, 0});
}

TEST_CASE("quadratic_point_from_line examples") {
  RatVector m(10, 0);
  m[1] = 1;  // x0x1
  m[8] = 1;  // x2x3
  const QuadraticForm f = monomials(4, m);
  const RatVector u{1, 0, 0, 0}, v{0, 0, 1, 0};

  auto r = quadratic_point_from_line(f, diag({1, 1, 1, -3}), u, v);
  CHECK(r.type == "quadratic");
  REQUIRE(r.quadratic);
  CHECK(r.quadratic->b == 0);
  CHECK(r.quadratic->c == 1);
  CHECK(r.quadratic->v0 == RatVector{1, 0, 0, 0});
  CHECK(r.quadratic->v1 == RatVector{0, 0, 1, 0});
  CHECK(r.quadratic->lies_on(f));
  CHECK(r.quadratic->lies_on(diag({1, 1, 1, -3})));

  r = quadratic_point_from_line(f, diag({1, 1, -1, -3}), u, v);
  CHECK(r.type == "rational");
  CHECK(r.points == std::vector<ProjectivePoint>{{{1, 0, -1, 0}}, {{1, 0, 1, 0}}});

  r = quadratic_point_from_line(f, diag({1, 1, 0, -3}), u, v);
  CHECK(r.type == "rational");
  CHECK(r.points == std::vector<ProjectivePoint>{{{0, 0, 1, 0}}});

  r = quadratic_point_from_line(f, diag({0, 1, 0, 1}), u, v);
  CHECK(r.type == "line");
  CHECK(r.line.size() == 2);

  CHECK_THROWS_AS(quadratic_point_from_line(f, diag({1, 1, 1, 1}), u, u), PreconditionError);
  CHECK_THROWS_AS(quadratic_point_from_line(diag({1, 1, 1, 1}), diag({1, 2, 2, 1}), u, v), PreconditionError);
}
