#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qp/fforacle.hpp"
#include "qp/localglobal.hpp"
#include "qp/pencil.hpp"
#include "qp/search.hpp"

namespace qp {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "pencil-quadrics/1";

/// Parses JSON text; throws InputError naming the line and column.
Json parse_json(std::string_view text);
/// Throws InputError if the file cannot be read or parsed.
Json read_json_file(const std::string& path);

/// {"dim": n, "gram": [["p/q", ...], ...]} with rationals as strings.
Json form_to_json(const QuadraticForm& q);
/// Accepts strings or JSON integers for entries. Throws InputError on a bad
/// shape, a malformed rational or an asymmetric matrix.
QuadraticForm form_from_json(const Json& j);

/// {"n": n, "f": form, "g": form}.
Json pencil_to_json(const Pencil& p);
Pencil pencil_from_json(const Json& j);

Json rational_vector_to_json(const RatVector& v);
Json integer_vector_to_json(const IntVector& v);
Json polynomial_to_json(const IntPolynomial& p);

/// {"place", "rank", "det_class", "hasse", "signature"?}.
Json local_invariants_to_json(const LocalInvariants& inv);
Json witt_to_json(const WittIndexResult& w);
/// {"witt", "anisotropic_dim", "critical": [...], "good_place_witt"}.
Json global_witt_to_json(const GlobalWittResult& g);

/// Witness for a point on X: {"type": "rational"|"quadratic"|"line",
/// "min_poly": [c, b, 1]?, "coords": ...}.
Json line_point_to_json(const LinePointResult& r);

/// Field elements as their integer encodings; "modulus" lists the
/// coefficients of the defining polynomial.
Json field_to_json(const FiniteField& F);
Json ff_report_to_json(const FFPropositionReport& r);

}  // namespace qp
