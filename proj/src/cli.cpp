#include "qp/cli.hpp"

#include <sstream>

#include "CLI11.hpp"
#include "qp/errors.hpp"
#include "qp/harness.hpp"
#include "qp/json_io.hpp"

namespace qp {

namespace {

Json header(const std::string& command) { return Json{{"schema", kSchema}, {"command", command}}; }

Json stratification_to_json(const StratificationReport& st) {
  Json rational = Json::array(), irrational = Json::array();
  for (const auto& s : st.rational)
    rational.push_back({{"parameter", s.parameter.label()}, {"multiplicity", s.multiplicity}, {"member_rank", s.member_rank}});
  for (const auto& s : st.irrational) {
    Json roots = Json::array();
    for (const auto& iv : s.real_roots) roots.push_back({to_string(iv.lo), to_string(iv.hi)});
    irrational.push_back({{"factor", polynomial_to_json(s.factor)},
                          {"multiplicity", s.multiplicity},
                          {"irreducible", s.irreducible},
                          {"real_roots", roots}});
  }
  return Json{{"identically_zero", st.identically_zero}, {"rational", rational}, {"irrational", irrational}};
}

Json model_to_json(const HyperellipticModel& m) {
  return Json{{"sign", m.sign},           {"scale", m.scale.get_str()},   {"poly", polynomial_to_json(m.poly)},
              {"degree", m.degree},       {"genus", m.genus},             {"squarefree", m.squarefree},
              {"identically_zero", m.identically_zero}};
}

unsigned parse_q(unsigned q, unsigned& p, unsigned& m) {
  for (unsigned d = 3; d <= q; d += 2) {
    if (q % d) continue;
    unsigned r = q, e = 0;
    while (r % d == 0) {
      r /= d;
      ++e;
    }
    if (r != 1) break;
    p = d;
    m = e;
    return q;
  }
  throw InputError("--q must be a power of an odd prime");
}

std::vector<Place> parse_places(const std::string& text) {
  std::vector<Place> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(Place::parse(item));
  return out;
}

struct Options {
  std::string file;
  std::string place;
  bool global = false;
  std::size_t r = 1;
  long height = 50;
  int sign = -1;
  bool points = false;
  bool odd_degree = false;
  unsigned q = 5;
  bool count_points = false;
  std::size_t planes = 0;
  bool bases = false;
  unsigned long budget = kDefaultFFBudget;
  std::string theorem;
  std::size_t samples = 10;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  long coeff_bound = 9;
  std::string places;
  std::size_t index = 0;
  bool rational_point = false;
};

Json cmd_analyze(const Options& o) {
  const Pencil p = pencil_from_json(read_json_file(o.file));
  const SmoothnessReport sm = is_smooth(p);
  Json j = header("analyze");
  j["n"] = p.n();
  j["smooth"] = sm.smooth;
  j["diagnosis"] = sm.diagnosis;
  j["det_form"] = rational_vector_to_json(p.det_form());
  j["stratification"] = stratification_to_json(stratify(p));
  if (!p.det_is_zero()) {
    const SignedMember sm2 = real_half_hyperbolic_member(p);
    j["real_member"] = {{"parameter", sm2.parameter.label()},
                        {"signature", {sm2.signature.positives, sm2.signature.negatives}}};
  }
  return j;
}

Json cmd_local(const Options& o) {
  const QuadraticForm q = form_from_json(read_json_file(o.file));
  const Place v = Place::parse(o.place);
  Json j = header("local");
  j["place"] = v.label();
  j["invariants"] = local_invariants_to_json(local_invariants(q, v));
  const WittIndexResult w = local_witt_index(q, v);
  j["witt"] = w.index;
  j["anisotropic_dim"] = w.anisotropic_dim;
  return j;
}

Json cmd_witt(const Options& o) {
  const QuadraticForm q = form_from_json(read_json_file(o.file));
  Json j = header("witt");
  if (o.global == !o.place.empty()) throw InputError("witt: give exactly one of --global or --place");
  if (o.global) {
    j.update(global_witt_to_json(global_witt_index(q)));
  } else {
    const Place v = Place::parse(o.place);
    j["place"] = v.label();
    j.update(witt_to_json(local_witt_index(q, v)));
  }
  return j;
}

Json cmd_member_search(const Options& o) {
  const Pencil p = pencil_from_json(read_json_file(o.file));
  Json j = header("member-search");
  j["place"] = o.place;
  j["r"] = o.r;
  j["height"] = o.height;
  if (o.place == "global") {
    const auto w = member_with_global_witt(p, o.r, o.height);
    j["found"] = w.has_value();
    if (w) {
      j["parameter"] = w->parameter.label();
      j["witt"] = w->witt.witt.index;
    }
  } else {
    const Place v = Place::parse(o.place);
    j["place"] = v.label();
    const auto w = member_with_local_witt(p, v, o.r, o.height);
    j["found"] = w.has_value();
    if (w) {
      j["parameter"] = w->parameter.label();
      j["witt"] = w->witt.index;
    }
  }
  return j;
}

Json cmd_curve(const Options& o) {
  const Pencil p = pencil_from_json(read_json_file(o.file));
  if (o.sign != 1 && o.sign != -1) throw InputError("curve: --sign must be 1 or -1");
  const HyperellipticModel m = discriminant_curve(p, o.sign);
  Json j = header("curve");
  j["model"] = model_to_json(m);
  if (o.points) {
    const CurvePoints pts = curve_point_search(m, o.height);
    Json aff = Json::array(), ram = Json::array();
    for (const auto& c : pts.affine) aff.push_back({to_string(c.t), to_string(c.y)});
    for (const auto& t : pts.ramification) ram.push_back(to_string(t));
    j["points"] = {{"height", o.height}, {"affine", aff}, {"ramification", ram}, {"at_infinity", pts.at_infinity}};
  }
  if (o.odd_degree) {
    const OddDegreeReport r = odd_degree_point_detector(m);
    Json d{{"verdict", to_string(r.verdict)}, {"witness_kind", r.witness_kind}};
    if (r.root) d["root"] = to_string(*r.root);
    if (r.factor) d["factor"] = polynomial_to_json(*r.factor);
    j["odd_degree"] = d;
  }
  return j;
}

Json cmd_ff(const Options& o) {
  unsigned p = 0, m = 0;
  parse_q(o.q, p, m);
  if (o.count_points == (o.planes != 0)) throw InputError("ff: give exactly one of --count-points or --planes <r>");
  const Pencil pen = pencil_from_json(read_json_file(o.file));
  const FiniteField F(p, m);
  const FFReduction red = reduce_pencil(pen, F);
  Json j = header("ff");
  j["field"] = field_to_json(F);
  j["smooth"] = red.smooth;
  if (!red.smooth) j["reason"] = red.reason;
  j["budget"] = o.budget;
  if (o.count_points) {
    j["count_points"] = count_points(red.f, red.g, o.budget);
  } else {
    const SubspaceCount c = enumerate_r_planes(red.f, red.g, o.planes, o.bases, o.budget);
    Json pl{{"r", o.planes}, {"count", c.count}, {"work", c.work}};
    if (o.bases) {
      Json bs = Json::array();
      for (const auto& b : c.bases) bs.push_back(b);
      pl["bases"] = bs;
    }
    j["planes"] = pl;
  }
  return j;
}

VerificationReport run_verify(const Options& o) {
  CampaignSpec spec;
  spec.theorem_id = o.theorem;
  spec.samples = o.samples;
  spec.seed = o.seed;
  spec.n = o.n;
  spec.coeff_bound = o.coeff_bound;
  spec.height_bound = o.height;
  spec.places = parse_places(o.places);
  spec.q = o.theorem == "ff-census" ? o.q : 0;
  return verify(spec);
}

Json cmd_generate(const Options& o) {
  GeneratorConstraints c;
  c.has_rational_point = o.rational_point;
  const Pencil p = generate_smooth_pencil(o.n, o.coeff_bound, o.seed, c, o.index);
  Json j = header("generate");
  j["seed"] = o.seed;
  j["index"] = o.index;
  j.update(pencil_to_json(p));
  return j;
}

Json error_doc(const std::string& kind, const std::string& message) {
  Json j{{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pencils of quadrics: invariants, witnesses and verification campaigns", "qpencil"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Smoothness, determinant form, stratification and a real member");
  analyze->add_option("pencil", o.file, "pencil JSON file")->required();

  auto* local = app.add_subcommand("local", "Local invariants and Witt index of a form at a place");
  local->add_option("--place", o.place, "place: real or a prime")->required();
  local->add_option("form", o.file, "form JSON file")->required();

  auto* witt = app.add_subcommand("witt", "Witt index of a form, global or at a place");
  witt->add_flag("--global", o.global, "global Witt index over Q");
  witt->add_option("--place", o.place, "place: real or a prime");
  witt->add_option("form", o.file, "form JSON file")->required();

  auto* ms = app.add_subcommand("member-search", "Member whose Witt index reaches r, by height");
  ms->add_option("--place", o.place, "place: real, a prime or global")->required();
  ms->add_option("--r", o.r, "target Witt index")->required()->check(CLI::PositiveNumber);
  ms->add_option("--height", o.height, "parameter height bound")->check(CLI::PositiveNumber);
  ms->add_option("pencil", o.file, "pencil JSON file")->required();

  auto* curve = app.add_subcommand("curve", "Discriminant curve y^2 = sign * det");
  curve->add_option("--sign", o.sign, "1 or -1")->required();
  curve->add_flag("--points", o.points, "search rational points");
  curve->add_flag("--odd-degree", o.odd_degree, "odd-degree point detector");
  curve->add_option("--height", o.height, "point search height")->check(CLI::PositiveNumber);
  curve->add_option("pencil", o.file, "pencil JSON file")->required();

  auto* ff = app.add_subcommand("ff", "Point and subspace counts of the reduction over F_q");
  ff->add_option("--q", o.q, "odd prime power <= 4096")->required();
  ff->add_flag("--count-points", o.count_points, "count points of X");
  ff->add_option("--planes", o.planes, "count projective r-planes in X")->check(CLI::PositiveNumber);
  ff->add_flag("--bases", o.bases, "list echelon bases of the planes");
  ff->add_option("--budget", o.budget, "operation budget");
  ff->add_option("pencil", o.file, "pencil JSON file")->required();

  auto* ver = app.add_subcommand("verify", "Seeded verification campaign for one theorem");
  ver->add_option("--theorem", o.theorem, "theorem id")->required();
  ver->add_option("--samples", o.samples, "instance count");
  ver->add_option("--seed", o.seed, "64-bit seed");
  ver->add_option("--n", o.n, "ambient dimension (0 = theorem default)");
  ver->add_option("--coeff-bound", o.coeff_bound, "coefficient bound")->check(CLI::PositiveNumber);
  ver->add_option("--height", o.height, "search height bound")->check(CLI::PositiveNumber);
  ver->add_option("--places", o.places, "comma-separated places");
  ver->add_option("--q", o.q, "field size for ff-census");

  auto* gen = app.add_subcommand("generate", "Random smooth pencil");
  gen->add_option("--n", o.n, "ambient dimension in [3, 7]")->required();
  gen->add_option("--seed", o.seed, "64-bit seed");
  gen->add_option("--index", o.index, "instance index within the seed");
  gen->add_option("--coeff-bound", o.coeff_bound, "coefficient bound")->check(CLI::PositiveNumber);
  gen->add_flag("--rational-point", o.rational_point, "force (1:0:...:0) onto X");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << error_doc("usage", e.what()).dump(2) << "\n";
    return kExitInputError;
  }

  try {
    Json doc;
    int code = kExitOk;
    if (analyze->parsed()) {
      doc = cmd_analyze(o);
    } else if (local->parsed()) {
      doc = cmd_local(o);
    } else if (witt->parsed()) {
      doc = cmd_witt(o);
    } else if (ms->parsed()) {
      doc = cmd_member_search(o);
    } else if (curve->parsed()) {
      doc = cmd_curve(o);
    } else if (ff->parsed()) {
      doc = cmd_ff(o);
    } else if (ver->parsed()) {
      const VerificationReport rep = run_verify(o);
      doc = rep.to_json();
      if (!rep.campaign_ok) code = kExitCampaignFailure;
    } else {
      doc = cmd_generate(o);
    }
    out << doc.dump(2) << "\n";
    return code;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    out << error_doc("internal", e.what()).dump(2) << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    // Input, domain, precondition, budget and generator errors all trace
    // back to the arguments or the input files.
    err << e.what() << "\n";
    out << error_doc("input", e.what()).dump(2) << "\n";
    return kExitInputError;
  }
}

}  // namespace qp
