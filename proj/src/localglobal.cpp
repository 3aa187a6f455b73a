#include "qp/localglobal.hpp"

#include <algorithm>
#include <set>

#include "qp/arith.hpp"
#include "qp/errors.hpp"

namespace qp {

// ---------------------------------------------------------------- Place

Place Place::real() { return Place(); }

Place Place::finite(const Integer& p) {
  if (!is_probable_prime(p)) throw DomainError("place: " + p.get_str() + " is not a prime");
  Place v;
  v.real_ = false;
  v.prime_ = p;
  return v;
}

Place Place::parse(const std::string& text) {
  if (text == "real" || text == "inf" || text == "infinity" || text == "R") return real();
  try {
    const Rational r = parse_rational(text);
    if (r.get_den() != 1) throw DomainError("place must be an integer prime");
    return finite(r.get_num());
  } catch (const InputError&) {
    throw DomainError("unknown place '" + text + "'");
  }
}

std::string Place::label() const { return real_ ? "real" : prime_.get_str(); }

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.real_ != b.real_) return a.real_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.real_) return std::strong_ordering::equal;
  const int c = cmp(a.prime_, b.prime_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// ---------------------------------------------------------------- SquareClass

namespace {

Integer least_nonresidue(const Integer& p) {
  for (Integer u = 2;; ++u)
    if (legendre(u, p) == -1) return u;
}

int mod8(const Integer& z) {
  return static_cast<int>(mpz_fdiv_ui(z.get_mpz_t(), 8));
}

bool is_two(const Place& v) { return !v.is_real() && v.prime() == 2; }

}  // namespace

SquareClass::SquareClass(Place place, int parity, int unit) : place_(std::move(place)), parity_(parity & 1), unit_(unit) {}

bool SquareClass::is_square() const {
  if (place_.is_real()) return unit_ == 1;
  return parity_ == 0 && unit_ == 1;
}

std::string SquareClass::label() const {
  if (place_.is_real()) return unit_ == 1 ? "+1" : "-1";
  if (is_two(place_)) {
    static const int canon[8] = {0, 1, 0, -5, 0, 5, 0, -1};
    const int c = canon[unit_] * (parity_ ? 2 : 1);
    return std::to_string(c);
  }
  std::string s = unit_ == 1 ? "" : "u";
  if (parity_) s += "p";
  return s.empty() ? "1" : s;
}

Rational SquareClass::representative() const {
  if (place_.is_real()) return unit_;
  Integer rep;
  if (is_two(place_)) {
    static const int canon[8] = {0, 1, 0, -5, 0, 5, 0, -1};
    rep = canon[unit_];
  } else {
    rep = unit_ == 1 ? Integer(1) : least_nonresidue(place_.prime());
  }
  if (parity_) rep *= place_.prime();
  return Rational(rep);
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  if (!(a.place_ == b.place_)) throw DomainError("product of square classes at different places");
  const int unit = is_two(a.place_) ? (a.unit_ * b.unit_) % 8 : a.unit_ * b.unit_;
  return SquareClass(a.place_, a.parity_ ^ b.parity_, unit);
}

SquareClass square_class(const Rational& a, const Place& v) {
  if (a == 0) throw DomainError("square class of zero");
  if (v.is_real()) return SquareClass(v, 0, sgn(a));
  const Integer& p = v.prime();
  Integer m = a.get_num() * a.get_den();  // same class as a
  const unsigned val = valuation(m, p);
  for (unsigned i = 0; i < val; ++i) mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
  if (p == 2) return SquareClass(v, static_cast<int>(val % 2), mod8(m));
  return SquareClass(v, static_cast<int>(val % 2), legendre(m, p));
}

// ---------------------------------------------------------------- Hilbert symbol

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw DomainError("Hilbert symbol with a zero argument");
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.prime();
  Integer u = a.get_num() * a.get_den();
  Integer w = b.get_num() * b.get_den();
  const unsigned alpha = valuation(u, p);
  const unsigned beta = valuation(w, p);
  for (unsigned i = 0; i < alpha; ++i) mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
  for (unsigned i = 0; i < beta; ++i) mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t());
  if (p == 2) {
    const int u8 = mod8(u), w8 = mod8(w);
    const int eps_u = (u8 % 4 == 3) ? 1 : 0;
    const int eps_w = (w8 % 4 == 3) ? 1 : 0;
    const int om_u = (u8 == 3 || u8 == 5) ? 1 : 0;
    const int om_w = (w8 == 3 || w8 == 5) ? 1 : 0;
    const int e = eps_u * eps_w + static_cast<int>(alpha % 2) * om_w + static_cast<int>(beta % 2) * om_u;
    return e % 2 ? -1 : 1;
  }
  int s = 1;
  const bool p3mod4 = mpz_fdiv_ui(p.get_mpz_t(), 4) == 3;
  if ((alpha % 2) && (beta % 2) && p3mod4) s = -s;
  if (beta % 2) s *= legendre(u, p);
  if (alpha % 2) s *= legendre(w, p);
  return s;
}

int hasse_invariant(const RatVector& entries, const Place& v) {
  int eps = 1;
  Rational prefix = 1;
  for (std::size_t j = 0; j < entries.size(); ++j) {
    if (entries[j] == 0) throw PreconditionError("Hasse invariant of a degenerate diagonal form");
    // prod_{i<j} (a_i, a_j) = (a_1 ... a_{j-1}, a_j) by bimultiplicativity.
    if (j > 0) eps *= hilbert_symbol(prefix, entries[j], v);
    prefix *= entries[j];
    // Keep the prefix small: only its square class matters.
    if (j % 4 == 3) prefix = square_class(prefix, v).representative();
  }
  return eps;
}

int hasse_invariant(const Diagonalization& d, const Place& v) { return hasse_invariant(d.entries, v); }

LocalInvariants local_invariants(const QuadraticForm& q, const Place& v) {
  const Diagonalization d = diagonalize(q);
  const RatVector e = d.nonzero_entries();
  LocalInvariants inv{v, e.size(), SquareClass(v, 0, 1), 1, std::nullopt};
  for (const auto& x : e) inv.det_class = inv.det_class * square_class(x, v);
  inv.hasse = hasse_invariant(e, v);
  if (v.is_real()) inv.signature = signature(d);
  return inv;
}

// ---------------------------------------------------------------- Witt index

WittIndexResult witt_index_from_invariants(std::size_t rank, const SquareClass& det_class, int hasse) {
  const Place& v = det_class.place();
  if (v.is_real()) throw DomainError("witt_index_from_invariants: finite places only");
  Rational d = det_class.representative();
  std::size_t n = rank;
  std::size_t index = 0;
  auto isotropic = [&]() {
    switch (n) {
      case 0:
      case 1:
        return false;
      case 2:
        return square_class(-d, v).is_square();
      case 3:
        return hasse == hilbert_symbol(-1, -d, v);
      case 4:
        return !square_class(d, v).is_square() || hasse == hilbert_symbol(-1, -1, v);
      default:
        return true;
    }
  };
  while (isotropic()) {
    // q = H + q', det(q') = -d, hasse(q) = hasse(q') * (-1, det q').
    d = -d;
    hasse *= hilbert_symbol(-1, d, v);
    n -= 2;
    ++index;
  }
  return {index, n};
}

namespace {

WittIndexResult witt_from(const LocalInvariants& inv) {
  if (inv.place.is_real()) {
    const auto& s = *inv.signature;
    const std::size_t idx = std::min(s.positives, s.negatives);
    return {idx, std::max(s.positives, s.negatives) - idx};
  }
  return witt_index_from_invariants(inv.rank, inv.det_class, inv.hasse);
}

void require_nondegenerate(const Diagonalization& d, const char* op) {
  if (d.rank != d.entries.size()) throw PreconditionError(std::string(op) + ": form is degenerate");
}

}  // namespace

WittIndexResult local_witt_index(const QuadraticForm& q, const Place& v) {
  const Diagonalization d = diagonalize(q);
  require_nondegenerate(d, "local_witt_index");
  return witt_from(local_invariants(q, v));
}

std::vector<Integer> critical_primes(const RatVector& entries) {
  std::set<Integer> primes{Integer(2)};
  for (const auto& e : entries) {
    if (e == 0) continue;
    for (const auto* z : {&e.get_num(), &e.get_den()})
      if (abs_int(*z) > 1)
        for (const auto& pp : factorize(*z)) primes.insert(pp.prime);
  }
  return {primes.begin(), primes.end()};
}

GlobalWittResult global_witt_index(const QuadraticForm& q) {
  const Diagonalization d = diagonalize(q);
  require_nondegenerate(d, "global_witt_index");
  const std::size_t n = d.rank;
  GlobalWittResult out;

  // Every place outside S sees a unit diagonal form: index floor(n/2) for odd
  // n; for n = 2m it drops to m - 1 at the (infinitely many) good primes where
  // (-1)^m det is a nonsquare unit, which exist iff it is not a global square.
  Rational signed_det = nondegenerate_determinant(d);
  if ((n / 2) % 2 == 1) signed_det = -signed_det;
  out.signed_det_is_square = is_rational_square(signed_det);
  if (n % 2 == 1) {
    out.good_place_index = n / 2;
  } else {
    out.good_place_index = out.signed_det_is_square ? n / 2 : n / 2 - 1;
  }

  std::size_t best = out.good_place_index;
  std::vector<Place> places{Place::real()};
  for (const auto& p : critical_primes(d.entries)) places.push_back(Place::finite(p));
  for (const auto& v : places) {
    LocalInvariants inv = local_invariants(q, v);
    const WittIndexResult w = witt_from(inv);
    best = std::min(best, w.index);
    out.critical.push_back({v, std::move(inv), w});
  }
  out.witt = {best, n - 2 * best};
  return out;
}

RHReport contains_rH_report(const QuadraticForm& q, std::size_t r) {
  const GlobalWittResult g = global_witt_index(q);
  const std::size_t rk = g.witt.anisotropic_dim + 2 * g.witt.index;
  if (r > rk / 2) throw DomainError("contains_rH_report: r exceeds rank/2");
  RHReport rep;
  rep.r = r;
  for (const auto& pw : g.critical) rep.places.push_back({pw.place.label(), pw.witt.index, pw.witt.index >= r});
  rep.places.push_back({"good", g.good_place_index, g.good_place_index >= r});
  rep.global = g.witt.index >= r;
  return rep;
}

// ---------------------------------------------------------------- Brauer classes

bool BrauerClassTwoTorsion::is_zero() const {
  return std::all_of(local_signs.begin(), local_signs.end(), [](const auto& kv) { return kv.second == 1; });
}

int BrauerClassTwoTorsion::sign_at(const Place& v) const {
  auto it = local_signs.find(v);
  return it == local_signs.end() ? 1 : it->second;
}

int BrauerClassTwoTorsion::reciprocity_product() const {
  int s = 1;
  for (const auto& kv : local_signs) s *= kv.second;
  return s;
}

BrauerClassTwoTorsion quaternion_class(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw DomainError("quaternion class with a zero argument");
  BrauerClassTwoTorsion c;
  c.local_signs[Place::real()] = hilbert_symbol(a, b, Place::real());
  for (const auto& p : critical_primes({a, b})) {
    const Place v = Place::finite(p);
    c.local_signs[v] = hilbert_symbol(a, b, v);
  }
  return c;
}

AlbertReport clifford_albert(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  if (a == 0 || b == 0 || c == 0 || d == 0) throw DomainError("clifford_albert: arguments must be nonzero");
  AlbertReport rep;
  rep.form = QuadraticForm::diagonal({-a, -b, a * b, c, d, -c * d});
  std::set<Place> places{Place::real()};
  for (const auto& p : critical_primes({a, b, c, d})) places.insert(Place::finite(p));
  for (const auto& v : places) rep.clifford.local_signs[v] = hilbert_symbol(a, b, v) * hilbert_symbol(c, d, v);
  rep.totally_hyperbolic = rep.clifford.is_zero();
  rep.isotropic = true;
  return rep;
}

QuadraticForm albert_completion(const QuadraticForm& q5) {
  if (q5.dim() != 5) throw PreconditionError("albert_completion: form must have rank 5");
  const Rational det = q5.determinant();
  if (det == 0) throw PreconditionError("albert_completion: form is degenerate");
  return direct_sum(q5, QuadraticForm::diagonal({-det}));
}

}  // namespace qp
