#include "qp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <exception>

#include "qp/arith.hpp"
#include "qp/errors.hpp"
#include "qp/fforacle.hpp"
#include "qp/search.hpp"

namespace qp {

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

long CounterRng::uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

Pencil generate_smooth_pencil(std::size_t n, long coeff_bound, std::uint64_t seed,
                              const GeneratorConstraints& constraints, std::uint64_t index) {
  if (n < 3 || n > 7) throw PreconditionError("generate_smooth_pencil: n must lie in [3, 7]");
  if (coeff_bound < 1) throw PreconditionError("generate_smooth_pencil: coeff_bound must be positive");
  CounterRng rng(seed, index);
  const std::size_t dim = n + 1, count = dim * (dim + 1) / 2;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    RatVector fm(count), gm(count);
    for (auto& c : fm) c = rng.uniform(-coeff_bound, coeff_bound);
    for (auto& c : gm) c = rng.uniform(-coeff_bound, coeff_bound);
    if (constraints.has_rational_point) {
      fm[0] = gm[0] = 0;
      // x0 x_i coefficients sit at positions 1 .. n.
      bool independent = false;
      for (std::size_t i = 1; i <= n && !independent; ++i)
        for (std::size_t k = i + 1; k <= n && !independent; ++k) independent = fm[i] * gm[k] != fm[k] * gm[i];
      if (!independent) continue;
    }
    if (constraints.rational_singular_member)
      for (std::size_t i = 0; i <= n; ++i) fm[i] = 0;
    Pencil p(QuadraticForm::from_monomials(dim, fm), QuadraticForm::from_monomials(dim, gm));
    if (is_smooth(p).smooth) return p;
  }
  throw GeneratorError("generate_smooth_pencil: 10^4 consecutive rejections");
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"p3-quad-point",    "p4-quad-point", "p5-global-quad",
                                            "p5-iyer-parimala", "p6-conic-local", "p7-local-3h",
                                            "p7-global-3h",     "mordell-real",   "hasse-subform",
                                            "ff-census"};
  return ids;
}

bool is_must_witness(const std::string& id) {
  return id == "mordell-real" || id == "p3-quad-point" || id == "p4-quad-point" || id == "p6-conic-local" ||
         id == "p7-local-3h" || id == "ff-census";
}

namespace {

constexpr const char* kWitnessed = "witnessed";
constexpr const char* kNotFound = "not-found-within-bound";
constexpr const char* kSkipped = "skipped";
constexpr const char* kRefuted = "refuted";

std::size_t default_n(const std::string& id, std::size_t index) {
  if (id == "mordell-real") return 3 + index % 5;
  if (id == "p3-quad-point") return 3;
  if (id == "p4-quad-point" || id == "ff-census") return 4;
  if (id == "p5-global-quad" || id == "p5-iyer-parimala" || id == "hasse-subform") return 5;
  if (id == "p6-conic-local") return 6;
  return 7;
}

std::vector<Place> default_places(const std::string& id) {
  auto primes = [](std::initializer_list<long> ps) {
    std::vector<Place> v;
    for (long p : ps) v.push_back(Place::finite(p));
    return v;
  };
  if (id == "p3-quad-point" || id == "p4-quad-point") return primes({2, 3, 5, 7});
  if (id == "p5-iyer-parimala") {
    auto v = primes({2, 3, 5, 7});
    v.insert(v.begin(), Place::real());
    return v;
  }
  if (id == "p6-conic-local") return primes({11, 13});
  if (id == "p7-local-3h") return primes({2, 3, 5});
  return {};
}

std::pair<unsigned, unsigned> prime_power(unsigned q) {
  for (unsigned p = 3; p <= q; p += 2) {
    if (q % p) continue;
    unsigned m = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r != 1 || !is_probable_prime(Integer(p))) break;
    return {p, m};
  }
  throw InputError("q must be a power of an odd prime");
}

Json param_json(const MemberParameter& t) { return t.label(); }

struct Context {
  const CampaignSpec& spec;
  std::vector<Place> places;
};

// ---- per-theorem runners; each fills outcome, reason and witness.

void run_real_member(const Pencil& p, InstanceOutcome& out) {
  const SignedMember m = real_half_hyperbolic_member(p);
  // Re-verify from the member itself.
  const QuadraticForm q = member(p, m.parameter);
  const RealSignature s = signature(q);
  const std::size_t gap = s.positives > s.negatives ? s.positives - s.negatives : s.negatives - s.positives;
  out.witness = {{"parameter", param_json(m.parameter)}, {"signature", {s.positives, s.negatives}}};
  if (s.zeros == 0 && gap <= 1 && s == m.signature) {
    out.outcome = kWitnessed;
  } else {
    out.outcome = kRefuted;
    out.reason = "witness signature failed re-verification";
  }
}

void run_local_witt(const Pencil& p, const Context& ctx, std::size_t r, InstanceOutcome& out) {
  Json per = Json::array();
  bool all = true;
  for (const Place& v : ctx.places) {
    const auto w = member_with_local_witt(p, v, r, ctx.spec.height_bound);
    if (!w) {
      all = false;
      per.push_back({{"place", v.label()}, {"found", false}});
      continue;
    }
    const std::size_t check = local_witt_index(member(p, w->parameter), v).index;
    if (check < r) throw InternalError("member_with_local_witt returned a member below the target");
    per.push_back({{"place", v.label()}, {"found", true}, {"parameter", param_json(w->parameter)}, {"witt", check}});
  }
  out.witness = {{"r", r}, {"places", per}};
  out.outcome = all ? kWitnessed : kNotFound;
  if (!all) out.reason = "no member within height " + std::to_string(ctx.spec.height_bound) + " at some place";
}

void run_p5_global(const Pencil& p, const Context& ctx, InstanceOutcome& out) {
  const long bound = ctx.spec.height_bound;
  const auto w = member_with_global_witt(p, 2, bound);
  if (!w) {
    out.outcome = kNotFound;
    out.reason = "no member with global Witt index >= 2 within height " + std::to_string(bound);
    return;
  }
  out.witness = {{"parameter", param_json(w->parameter)}, {"witt", w->witt.witt.index}};
  const QuadraticForm q = member(p, w->parameter);
  const auto plane = isotropic_plane(q, bound);
  if (plane.status != SearchStatus::found) {
    out.outcome = kNotFound;
    out.reason = "isotropic plane of the member: " + to_string(plane.status);
    return;
  }
  const RatVector u(plane.basis[0].begin(), plane.basis[0].end()), v(plane.basis[1].begin(), plane.basis[1].end());
  const LinePointResult pt = quadratic_point_from_line(p.f(), p.g(), u, v);
  out.witness["plane"] = {integer_vector_to_json(plane.basis[0]), integer_vector_to_json(plane.basis[1])};
  out.witness["point"] = line_point_to_json(pt);
  out.outcome = kWitnessed;
}

void run_odd_degree_point(const Pencil& p, const Context& ctx, InstanceOutcome& out) {
  const OddDegreeReport odd = odd_degree_point_detector(discriminant_curve(p, -1));
  out.witness = {{"odd_degree", to_string(odd.verdict)}, {"odd_degree_kind", odd.witness_kind}};
  if (odd.verdict != OddDegreeVerdict::yes) {
    out.outcome = kSkipped;
    out.reason = "odd-degree point on y^2 = -det not detected";
    return;
  }
  // A k_v-line on X lies in every member, so every nondegenerate member has
  // local Witt index >= 2; sampled members of height <= 3 are tested.
  Json tests = Json::array();
  for (const Place& v : ctx.places) {
    bool pass = true;
    for (const auto& t : parameters_up_to(3)) {
      const QuadraticForm q = member(p, t);
      if (!is_nondegenerate(q)) continue;
      if (local_witt_index(q, v).index < 2) {
        pass = false;
        break;
      }
    }
    tests.push_back({{"place", v.label()}, {"passed", pass}});
    if (!pass) {
      out.witness["local_line_tests"] = tests;
      out.outcome = kSkipped;
      out.reason = "no " + v.label() + "-line: a member has local Witt index < 2";
      return;
    }
  }
  out.witness["local_line_tests"] = tests;
  const long bound = std::min<long>(ctx.spec.height_bound, 4);
  const auto pts = point_search(p.f(), p.g(), bound);
  if (pts.empty()) {
    out.outcome = kNotFound;
    out.reason = "no rational point of height <= " + std::to_string(bound);
    return;
  }
  out.witness["point"] = integer_vector_to_json(pts.front().coords);
  out.outcome = kWitnessed;
}

void run_p6_conic(const Pencil& p, const Context& ctx, InstanceOutcome& out) {
  Json per = Json::array();
  bool any_good = false, all = true;
  for (const Place& v : ctx.places) {
    if (v.is_real() || v.prime() <= 9) throw InputError("p6-conic-local needs primes with residue field > 9");
    const FFReduction red = reduce_pencil(p, FiniteField(static_cast<unsigned>(v.prime().get_ui())));
    if (!red.smooth) {
      per.push_back({{"place", v.label()}, {"skipped", "bad reduction: " + red.reason}});
      continue;
    }
    any_good = true;
    const auto w = member_with_local_witt(p, v, 3, ctx.spec.height_bound);
    if (!w) {
      all = false;
      per.push_back({{"place", v.label()}, {"found", false}});
      continue;
    }
    per.push_back({{"place", v.label()}, {"found", true}, {"parameter", param_json(w->parameter)}, {"witt", w->witt.index}});
  }
  out.witness = {{"places", per}};
  if (!any_good) {
    out.outcome = kSkipped;
    out.reason = "bad reduction at every place";
  } else {
    out.outcome = all ? kWitnessed : kNotFound;
  }
}

void run_p7_local(const Pencil& p, const Context& ctx, InstanceOutcome& out) {
  const bool rational_root = !stratify(p).rational.empty();
  Json per = Json::array();
  bool all = true;
  for (const Place& v : ctx.places) {
    std::optional<MemberParameter> t;
    std::string path;
    if (rational_root && !v.is_real()) {
      t = padic_nonsquare_det_member(p, v);
      path = "nonsquare-det";
    } else if (auto w = member_with_local_witt(p, v, 3, ctx.spec.height_bound)) {
      t = w->parameter;
      path = "scan";
    }
    if (!t) {
      all = false;
      per.push_back({{"place", v.label()}, {"found", false}});
      continue;
    }
    const WittIndexResult w = local_witt_index(member(p, *t), v);
    if (w.index < 3) {
      all = false;
      per.push_back({{"place", v.label()}, {"found", false}, {"parameter", param_json(*t)}, {"witt", w.index}});
      continue;
    }
    per.push_back({{"place", v.label()}, {"found", true}, {"path", path}, {"parameter", param_json(*t)}, {"witt", w.index}});
  }
  out.witness = {{"rational_root", rational_root}, {"places", per}};
  out.outcome = all ? kWitnessed : kNotFound;
}

void run_p7_global(const Pencil& p, const Context& ctx, InstanceOutcome& out) {
  const StratificationReport st = stratify(p);
  const bool rank7 = std::any_of(st.rational.begin(), st.rational.end(),
                                 [&](const RationalStratum& s) { return s.member_rank == p.n(); });
  if (!rank7) {
    out.outcome = kSkipped;
    out.reason = "no rank-7 member";
    return;
  }
  const auto w = member_with_global_witt(p, 3, ctx.spec.height_bound);
  if (!w) {
    out.outcome = kNotFound;
    out.reason = "no member with global Witt index >= 3 within height " + std::to_string(ctx.spec.height_bound);
    return;
  }
  const auto sub = greedy_isotropic_subspace(member(p, w->parameter), 3, 6);
  out.witness = {{"parameter", param_json(w->parameter)}, {"witt", w->witt.witt.index}, {"explicit_dim", sub.size()}};
  out.outcome = kWitnessed;
}

void run_hasse(const Context& ctx, std::size_t index, InstanceOutcome& out) {
  const std::size_t dim = ctx.spec.n ? ctx.spec.n + 1 : 3 + index % 6;
  CounterRng rng(ctx.spec.seed, index);
  QuadraticForm q;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 10000) throw GeneratorError("hasse-subform: 10^4 degenerate forms in a row");
    RatVector m(dim * (dim + 1) / 2);
    for (auto& c : m) c = rng.uniform(-ctx.spec.coeff_bound, ctx.spec.coeff_bound);
    q = QuadraticForm::from_monomials(dim, m);
    if (is_nondegenerate(q)) break;
  }
  out.instance = form_to_json(q);
  const GlobalWittResult g = global_witt_index(q);
  std::size_t local_min = g.good_place_index;
  for (const auto& pw : g.critical) local_min = std::min(local_min, local_witt_index(q, pw.place).index);
  const auto basis = greedy_isotropic_subspace(q, dim, std::min<long>(ctx.spec.height_bound, 30));
  Json rows = Json::array();
  for (const auto& b : basis) rows.push_back(integer_vector_to_json(b));
  out.witness = {{"global_witt", g.witt.index}, {"local_min", local_min}, {"explicit_basis", rows}};
  if (basis.size() > g.witt.index || local_min != g.witt.index) {
    out.outcome = kRefuted;
    out.reason = basis.size() > g.witt.index ? "explicit subspace exceeds the computed index"
                                             : "global index differs from the minimum of local indices";
  } else if (basis.size() == g.witt.index) {
    out.outcome = kWitnessed;
  } else {
    out.outcome = kNotFound;
    out.reason = "explicit subspace of dimension " + std::to_string(basis.size()) + " below the index";
  }
}

void run_ff(const Pencil& p, const Context& ctx, InstanceOutcome& out) {
  const auto [pr, m] = prime_power(ctx.spec.q ? ctx.spec.q : 5);
  const FiniteField F(pr, m);
  const FFPropositionReport rep = verify_ff_propositions(p, F);
  out.witness = {{"field", field_to_json(F)}, {"report", ff_report_to_json(rep)}};
  if (rep.skipped) {
    out.outcome = kSkipped;
    out.reason = rep.skip_reason;
    return;
  }
  bool ok = rep.ok;
  const FFReduction red = reduce_pencil(p, F);
  try {
    if (p.n() == 4) {
      const auto lines = enumerate_r_planes(red.f, red.g, 1).count;
      out.witness["lines"] = lines;
      ok = ok && lines <= 16;
    } else if (p.n() == 6) {
      const auto planes = enumerate_r_planes(red.f, red.g, 2).count;
      out.witness["planes"] = planes;
      ok = ok && planes <= 64;
    }
  } catch (const BudgetError& e) {
    out.witness["subspace_count"] = std::string("budget exceeded: ") + e.what();
  }
  out.outcome = ok ? kWitnessed : kRefuted;
  if (!ok) out.reason = "finite-field check failed";
}

InstanceOutcome run_instance(const Context& ctx, std::size_t index) {
  InstanceOutcome out;
  out.index = index;
  const std::string& id = ctx.spec.theorem_id;
  if (id == "hasse-subform") {
    run_hasse(ctx, index, out);
    return out;
  }
  const std::size_t n = ctx.spec.n ? ctx.spec.n : default_n(id, index);
  GeneratorConstraints c;
  c.has_rational_point = id == "p7-local-3h";
  c.rational_singular_member = id == "p5-iyer-parimala" || id == "p7-global-3h";
  const Pencil p = generate_smooth_pencil(n, ctx.spec.coeff_bound, ctx.spec.seed, c, index);
  out.instance = pencil_to_json(p);
  if (id == "mordell-real") {
    run_real_member(p, out);
  } else if (id == "p3-quad-point" || id == "p4-quad-point") {
    run_local_witt(p, ctx, 2, out);
  } else if (id == "p5-global-quad") {
    run_p5_global(p, ctx, out);
  } else if (id == "p5-iyer-parimala") {
    run_odd_degree_point(p, ctx, out);
  } else if (id == "p6-conic-local") {
    run_p6_conic(p, ctx, out);
  } else if (id == "p7-local-3h") {
    run_p7_local(p, ctx, out);
  } else if (id == "p7-global-3h") {
    run_p7_global(p, ctx, out);
  } else {
    run_ff(p, ctx, out);
  }
  return out;
}

}  // namespace

VerificationReport verify(const CampaignSpec& spec) {
  const auto& ids = theorem_ids();
  if (std::find(ids.begin(), ids.end(), spec.theorem_id) == ids.end())
    throw InputError("unknown theorem id \"" + spec.theorem_id + "\"");
  if (spec.coeff_bound < 1 || spec.height_bound < 1) throw InputError("bounds must be positive");
  if (spec.n != 0 && spec.theorem_id != "hasse-subform" && (spec.n < 3 || spec.n > 7))
    throw InputError("n must lie in [3, 7]");
  if (spec.theorem_id == "ff-census") prime_power(spec.q ? spec.q : 5);

  const Context ctx{spec, spec.places.empty() ? default_places(spec.theorem_id) : spec.places};
  VerificationReport rep;
  rep.spec = spec;
  rep.spec.places = ctx.places;
  rep.must_witness = is_must_witness(spec.theorem_id);
  rep.instances.resize(spec.samples);
  std::vector<std::exception_ptr> errors(spec.samples);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      rep.instances[i] = run_instance(ctx, i);
    } catch (const BudgetError& e) {
      rep.instances[i].index = i;
      rep.instances[i].outcome = kSkipped;
      rep.instances[i].reason = std::string("budget: ") + e.what();
    } catch (...) {
      errors[i] = std::current_exception();
    }
    rep.instances[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& inst : rep.instances) {
    if (inst.outcome == kWitnessed) {
      ++rep.witnessed;
    } else if (inst.outcome == kNotFound) {
      ++rep.not_found;
      if (rep.must_witness) rep.campaign_ok = false;
    } else if (inst.outcome == kSkipped) {
      ++rep.skipped;
    } else {
      ++rep.refuted;
      rep.campaign_ok = false;
    }
  }
  return rep;
}

Json VerificationReport::to_json() const {
  Json places = Json::array();
  for (const auto& v : spec.places) places.push_back(v.label());
  Json insts = Json::array(), times = Json::array();
  double total = 0;
  for (const auto& i : instances) {
    Json j{{"index", i.index}, {"outcome", i.outcome}};
    if (!i.reason.empty()) j["reason"] = i.reason;
    j["instance"] = i.instance;
    j["witness"] = i.witness;
    insts.push_back(j);
    times.push_back(i.seconds);
    total += i.seconds;
  }
  return Json{{"schema", kSchema},
              {"command", "verify"},
              {"theorem", spec.theorem_id},
              {"must_witness", must_witness},
              {"spec",
               {{"n", spec.n},
                {"samples", spec.samples},
                {"coeff_bound", spec.coeff_bound},
                {"height_bound", spec.height_bound},
                {"places", places},
                {"seed", spec.seed},
                {"q", spec.q}}},
              {"summary",
               {{"total", instances.size()},
                {"witnessed", witnessed},
                {"not_found_within_bound", not_found},
                {"skipped", skipped},
                {"refuted", refuted}}},
              {"campaign_ok", campaign_ok},
              {"instances", insts},
              {"timings", {{"instance_seconds", times}, {"total_seconds", total}}}};
}

}  // namespace qp
