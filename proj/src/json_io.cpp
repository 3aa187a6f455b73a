#include "qp/json_io.hpp"

#include <fstream>
#include <sstream>

#include "qp/errors.hpp"

namespace qp {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset to line and column.
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

namespace {

Rational entry_from_json(const Json& e, const std::string& where) {
  if (e.is_string()) {
    try {
      return parse_rational(e.get<std::string>());
    } catch (const InputError& err) {
      throw InputError(where + ": " + err.what());
    }
  }
  if (e.is_number_integer()) return Rational(Integer(e.dump()));
  throw InputError(where + ": expected a rational string or an integer");
}

}  // namespace

Json form_to_json(const QuadraticForm& q) {
  Json gram = Json::array();
  for (std::size_t i = 0; i < q.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < q.dim(); ++j) row.push_back(to_string(q(i, j)));
    gram.push_back(row);
  }
  return Json{{"dim", q.dim()}, {"gram", gram}};
}

QuadraticForm form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gram")) throw InputError("form: expected an object with \"gram\"");
  const Json& g = j.at("gram");
  if (!g.is_array() || g.empty()) throw InputError("form: \"gram\" must be a nonempty array of rows");
  const std::size_t n = g.size();
  if (j.contains("dim") && (!j.at("dim").is_number_unsigned() || j.at("dim").get<std::size_t>() != n))
    throw InputError("form: \"dim\" does not match the Gram matrix");
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g[i].is_array() || g[i].size() != n)
      throw InputError("form: row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k)
      m(i, k) = entry_from_json(g[i][k], "form: gram[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  if (!m.is_symmetric()) throw InputError("form: Gram matrix is not symmetric");
  return QuadraticForm(m);
}

Json pencil_to_json(const Pencil& p) {
  return Json{{"n", p.n()}, {"f", form_to_json(p.f())}, {"g", form_to_json(p.g())}};
}

Pencil pencil_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("f") || !j.contains("g"))
    throw InputError("pencil: expected an object with \"f\" and \"g\"");
  QuadraticForm f = form_from_json(j.at("f")), g = form_from_json(j.at("g"));
  if (f.dim() != g.dim()) throw InputError("pencil: f and g have different dimensions");
  if (j.contains("n") && (!j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() + 1 != f.dim()))
    throw InputError("pencil: \"n\" must equal dim - 1");
  return Pencil(std::move(f), std::move(g));
}

Json rational_vector_to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json integer_vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json polynomial_to_json(const IntPolynomial& p) { return integer_vector_to_json(p.coefficients()); }

Json local_invariants_to_json(const LocalInvariants& inv) {
  Json j{{"place", inv.place.label()},
         {"rank", inv.rank},
         {"det_class", inv.det_class.label()},
         {"hasse", inv.hasse}};
  if (inv.signature) j["signature"] = {inv.signature->positives, inv.signature->negatives};
  return j;
}

Json witt_to_json(const WittIndexResult& w) { return Json{{"witt", w.index}, {"anisotropic_dim", w.anisotropic_dim}}; }

Json global_witt_to_json(const GlobalWittResult& g) {
  Json crit = Json::array();
  for (const auto& pw : g.critical) {
    Json c = local_invariants_to_json(pw.invariants);
    c["witt"] = pw.witt.index;
    crit.push_back(c);
  }
  return Json{{"witt", g.witt.index},
              {"anisotropic_dim", g.witt.anisotropic_dim},
              {"critical", crit},
              {"good_place_witt", g.good_place_index}};
}

Json line_point_to_json(const LinePointResult& r) {
  Json j{{"type", r.type}};
  if (r.type == "quadratic") {
    const QuadraticPoint& qp = *r.quadratic;
    j["min_poly"] = {to_string(qp.c), to_string(qp.b), "1"};
    j["coords"] = {{"v0", rational_vector_to_json(qp.v0)}, {"v1", rational_vector_to_json(qp.v1)}};
  } else if (r.type == "rational") {
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(integer_vector_to_json(p.coords));
    j["coords"] = pts;
  } else {
    Json rows = Json::array();
    for (const auto& v : r.line) rows.push_back(integer_vector_to_json(v));
    j["coords"] = rows;
  }
  return j;
}

Json field_to_json(const FiniteField& F) {
  return Json{{"q", F.q()}, {"p", F.p()}, {"m", F.m()}, {"modulus", F.modulus()}};
}

Json ff_report_to_json(const FFPropositionReport& r) {
  Json j{{"n", r.n}, {"q", r.q}, {"skipped", r.skipped}};
  if (r.skipped) {
    j["reason"] = r.skip_reason;
    return j;
  }
  j["point"] = r.point ? Json(*r.point) : Json(nullptr);
  j["witt_floor"] = r.witt_floor;
  j["min_member_witt"] = r.min_member_witt;
  j["nondegenerate_members"] = r.members.size();
  j["floor_holds"] = r.floor_holds;
  j["hyperbolic_required"] = r.hyperbolic_required;
  j["hyperbolic_member"] = r.hyperbolic_member ? Json(*r.hyperbolic_member) : Json(nullptr);
  j["ok"] = r.ok;
  return j;
}

}  // namespace qp
