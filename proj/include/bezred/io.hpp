#pragma once

#include <string>

#include <json.hpp>

#include "bezred/oracle.hpp"
#include "bezred/reduction.hpp"

namespace bezred {

/// Ring grammar: `Z` | `Zmod(n)` (n >= 2) | `GF(p)[x]` | `Prod(spec,spec)` |
/// `Quot(spec,elem)`. Quotients are normalized on parse, so the parsed ring's
/// own spec string is the normal form (e.g. parse_ring("Quot(Z,6)") prints as
/// "Zmod(6)").
RingPtr parse_ring(const std::string& spec);

/// Element literals: decimal integers ("-5"), coefficient lists low-to-high
/// ("[1,1]" is 1+x), pairs ("(2,3)").
Elem parse_elem(const RingPtr& ring, const std::string& text);

/// Matrices: JSON array-of-arrays of element encodings, or whitespace
/// separated text rows (one matrix row per line, no spaces inside an element
/// literal). A leading '[' selects JSON.
Matrix parse_matrix(const RingPtr& ring, const std::string& text);

nlohmann::ordered_json elem_to_json(const Elem& e);
Elem elem_from_json(const RingPtr& ring, const nlohmann::json& j);

nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const RingPtr& ring, const nlohmann::json& j);

/// Certificate JSON, field order fixed: ring, left_ops, Q, Q_inv, diag.
/// Row-op indices are 1-based in JSON (and 0-based in memory).
nlohmann::ordered_json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::ordered_json verdict_to_json(const Verdict& v);
nlohmann::ordered_json report_to_json(const PropertyReport& r);

}  // namespace bezred
