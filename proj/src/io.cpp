#include "bezred/io.hpp"

#include <cctype>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

namespace bezred {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

void expect(const std::string& s, size_t& pos, char c) {
    skip_ws(s, pos);
    if (pos >= s.size() || s[pos] != c)
        throw parse_error(std::string("expected '") + c + "' at position " +
                          std::to_string(pos) + " in \"" + s + "\"");
    ++pos;
}

/// Read characters until the next top-level `stop` char or unmatched close
/// bracket, respecting nesting of () and [].
std::string read_balanced(const std::string& s, size_t& pos, char stop) {
    size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
        char c = s[pos];
        if (depth == 0 && (c == stop || c == ')' || c == ']')) break;
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        ++pos;
    }
    return s.substr(start, pos - start);
}

Int parse_int_text(const std::string& text) {
    std::string t = trim(text);
    size_t i = 0;
    if (i < t.size() && t[i] == '-') ++i;
    if (i == t.size())
        throw parse_error("expected an integer, got \"" + text + "\"");
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i])))
            throw parse_error("expected an integer, got \"" + text + "\"");
    return Int(t);
}

RingPtr parse_spec(const std::string& s, size_t& pos) {
    skip_ws(s, pos);
    auto starts = [&](const char* kw) {
        return s.compare(pos, std::strlen(kw), kw) == 0;
    };
    if (starts("Zmod(")) {
        pos += 5;
        std::string num = read_balanced(s, pos, ')');
        expect(s, pos, ')');
        Int n = parse_int_text(num);
        if (n < 2) throw parse_error("Zmod(n) requires n >= 2, got " + trim(num));
        return zmod(n);
    }
    if (starts("GF(")) {
        pos += 3;
        std::string num = read_balanced(s, pos, ')');
        expect(s, pos, ')');
        expect(s, pos, '[');
        expect(s, pos, 'x');
        expect(s, pos, ']');
        return poly_over_gf(parse_int_text(num));
    }
    if (starts("Prod(")) {
        pos += 5;
        RingPtr l = parse_spec(s, pos);
        expect(s, pos, ',');
        RingPtr r = parse_spec(s, pos);
        expect(s, pos, ')');
        return product(l, r);
    }
    if (starts("Quot(")) {
        pos += 5;
        RingPtr base = parse_spec(s, pos);
        expect(s, pos, ',');
        skip_ws(s, pos);
        std::string elem_text = read_balanced(s, pos, ')');
        expect(s, pos, ')');
        Elem modulus = parse_elem(base, elem_text);
        return quotient_ring(base, modulus).ring();
    }
    if (starts("Z")) {
        pos += 1;
        return integers();
    }
    throw parse_error("unrecognized ring spec at \"" + s.substr(pos) + "\"");
}

std::vector<Int> parse_coeff_list(const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw parse_error("expected a coefficient list [c0,c1,...], got \"" + text + "\"");
    std::string inner = trim(t.substr(1, t.size() - 2));
    std::vector<Int> out;
    if (inner.empty()) return out;
    size_t pos = 0;
    while (true) {
        size_t comma = inner.find(',', pos);
        std::string piece = comma == std::string::npos ? inner.substr(pos)
                                                       : inner.substr(pos, comma - pos);
        out.push_back(parse_int_text(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

/// Build a polynomial-family element from raw coefficients, normalizing
/// through ring arithmetic (so coefficients may be any integers and the
/// degree may exceed a quotient modulus).
Elem poly_from_coeffs(const RingPtr& ring, const std::vector<Int>& coeffs) {
    if (coeffs.empty()) return ring->zero();
    return Elem::of_coeffs(ring, coeffs) * ring->one();
}

/// Split "(l,r)" at its top-level comma.
std::pair<std::string, std::string> split_pair(const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw parse_error("expected a pair (l,r), got \"" + text + "\"");
    std::string inner = t.substr(1, t.size() - 2);
    int depth = 0;
    for (size_t i = 0; i < inner.size(); ++i) {
        char c = inner[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (depth == 0 && c == ',')
            return {inner.substr(0, i), inner.substr(i + 1)};
    }
    throw parse_error("expected a pair (l,r), got \"" + text + "\"");
}

long long checked_ll(const Int& v, const char* what) {
    if (v > Int(std::numeric_limits<long long>::max()) ||
        v < Int(std::numeric_limits<long long>::min()))
        throw parse_error(std::string(what) + " out of 64-bit range");
    return static_cast<long long>(v);
}

/// Integers render as JSON numbers when they fit in 64 bits, otherwise as
/// decimal strings.
ordered_json int_to_json(const Int& v) {
    if (v <= Int(std::numeric_limits<long long>::max()) &&
        v >= Int(std::numeric_limits<long long>::min()))
        return ordered_json(static_cast<long long>(v));
    return ordered_json(v.str());
}

Int int_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return parse_int_text(j.get<std::string>());
    throw parse_error(std::string(what) + " must be an integer or decimal string");
}

}  // namespace

RingPtr parse_ring(const std::string& spec) {
    size_t pos = 0;
    RingPtr r;
    try {
        r = parse_spec(spec, pos);
    } catch (const precondition_error& e) {
        throw parse_error(std::string("invalid ring spec \"") + spec + "\": " + e.what());
    }
    skip_ws(spec, pos);
    if (pos != spec.size())
        throw parse_error("trailing characters after ring spec: \"" + spec.substr(pos) + "\"");
    return r;
}

Elem parse_elem(const RingPtr& ring, const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw parse_error("empty element literal");
    switch (ring->kind()) {
        case RingKind::integers:
        case RingKind::modular:
            return ring->from_int(parse_int_text(t));
        case RingKind::poly:
        case RingKind::poly_quot:
            if (t.front() == '[') return poly_from_coeffs(ring, parse_coeff_list(t));
            return ring->from_int(parse_int_text(t));
        case RingKind::product: {
            if (t.front() != '(')
                throw parse_error("product element must be a pair (l,r), got \"" + text + "\"");
            auto [lt, rt] = split_pair(t);
            Elem z = ring->zero();
            return Elem::of_pair(ring, parse_elem(z.left().ring(), lt),
                                 parse_elem(z.right().ring(), rt));
        }
    }
    throw parse_error("unsupported ring kind for element parsing");
}

Matrix parse_matrix(const RingPtr& ring, const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw parse_error("empty matrix input");
    if (t.front() == '[') {
        json j = json::parse(t, nullptr, false);
        if (!j.is_discarded()) return matrix_from_json(ring, j);
        // Not valid JSON: fall through to text rows (for example polynomial
        // literals like "[1,1] [0,1]" on one line).
    }
    std::vector<std::vector<Elem>> rows;
    size_t line_start = 0;
    while (line_start <= t.size()) {
        size_t line_end = t.find('\n', line_start);
        std::string line = line_end == std::string::npos
                               ? t.substr(line_start)
                               : t.substr(line_start, line_end - line_start);
        line_start = line_end == std::string::npos ? t.size() + 1 : line_end + 1;
        line = trim(line);
        if (line.empty()) continue;
        std::vector<Elem> row;
        size_t pos = 0;
        while (pos < line.size()) {
            skip_ws(line, pos);
            if (pos >= line.size()) break;
            size_t start = pos;
            int depth = 0;
            while (pos < line.size()) {
                char c = line[pos];
                if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) break;
                if (c == '(' || c == '[') ++depth;
                if (c == ')' || c == ']') --depth;
                ++pos;
            }
            row.push_back(parse_elem(ring, line.substr(start, pos - start)));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("empty matrix input");
    size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols)
            throw parse_error("matrix rows have unequal lengths");
    Matrix m(ring, static_cast<int>(rows.size()), static_cast<int>(cols));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

ordered_json elem_to_json(const Elem& e) {
    const RingPtr& ring = e.ring();
    switch (ring->kind()) {
        case RingKind::integers:
        case RingKind::modular:
            return int_to_json(e.as_int());
        case RingKind::poly:
        case RingKind::poly_quot: {
            ordered_json arr = ordered_json::array();
            const auto& cs = e.as_coeffs();
            if (cs.empty()) arr.push_back(0);
            for (const Int& c : cs) arr.push_back(int_to_json(c));
            return arr;
        }
        case RingKind::product: {
            ordered_json arr = ordered_json::array();
            arr.push_back(elem_to_json(e.left()));
            arr.push_back(elem_to_json(e.right()));
            return arr;
        }
    }
    throw internal_error("unsupported ring kind for element serialization");
}

Elem elem_from_json(const RingPtr& ring, const json& j) {
    if (j.is_string()) return parse_elem(ring, j.get<std::string>());
    switch (ring->kind()) {
        case RingKind::integers:
        case RingKind::modular:
            return ring->from_int(int_from_json(j, "element"));
        case RingKind::poly:
        case RingKind::poly_quot: {
            if (j.is_number_integer())
                return ring->from_int(Int(j.get<long long>()));
            if (!j.is_array())
                throw parse_error("polynomial element must be a coefficient array");
            std::vector<Int> cs;
            for (const auto& c : j) cs.push_back(int_from_json(c, "coefficient"));
            return poly_from_coeffs(ring, cs);
        }
        case RingKind::product: {
            if (!j.is_array() || j.size() != 2)
                throw parse_error("product element must be a 2-element array");
            Elem z = ring->zero();
            return Elem::of_pair(ring, elem_from_json(z.left().ring(), j[0]),
                                 elem_from_json(z.right().ring(), j[1]));
        }
    }
    throw parse_error("unsupported ring kind for element decoding");
}

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const RingPtr& ring, const json& j) {
    if (!j.is_array() || j.empty())
        throw parse_error("matrix must be a non-empty JSON array of rows");
    std::vector<std::vector<Elem>> rows;
    for (const auto& jrow : j) {
        if (!jrow.is_array() || jrow.empty())
            throw parse_error("matrix row must be a non-empty JSON array");
        std::vector<Elem> row;
        for (const auto& je : jrow) row.push_back(elem_from_json(ring, je));
        rows.push_back(std::move(row));
    }
    size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw parse_error("matrix rows have unequal lengths");
    Matrix m(ring, static_cast<int>(rows.size()), static_cast<int>(cols));
    for (int i = 0; i < m.rows(); ++i)
        for (int j2 = 0; j2 < m.cols(); ++j2) m.at(i, j2) = rows[i][j2];
    return m;
}

ordered_json certificate_to_json(const Certificate& c) {
    ordered_json j;
    j["ring"] = c.ring->spec_string();
    ordered_json ops = ordered_json::array();
    for (const ElementaryOp& op : c.left_ops) {
        if (op.side != OpSide::left_row)
            throw precondition_error("certificate contains a non-left operation");
        ordered_json jo;
        jo["i"] = op.i + 1;
        jo["j"] = op.j + 1;
        jo["scalar"] = elem_to_json(op.scalar);
        ops.push_back(std::move(jo));
    }
    j["left_ops"] = std::move(ops);
    j["Q"] = matrix_to_json(c.q);
    j["Q_inv"] = matrix_to_json(c.q_inv);
    ordered_json diag = ordered_json::array();
    for (const Elem& d : c.diag) diag.push_back(elem_to_json(d));
    j["diag"] = std::move(diag);
    return j;
}

Certificate certificate_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("certificate must be a JSON object");
    for (const char* field : {"ring", "left_ops", "Q", "Q_inv", "diag"})
        if (!j.contains(field))
            throw parse_error(std::string("certificate is missing field \"") + field + "\"");
    if (!j["ring"].is_string()) throw parse_error("certificate ring must be a string");
    Certificate c;
    c.ring = parse_ring(j["ring"].get<std::string>());
    if (!j["left_ops"].is_array()) throw parse_error("left_ops must be an array");
    for (const auto& jo : j["left_ops"]) {
        if (!jo.is_object() || !jo.contains("i") || !jo.contains("j") || !jo.contains("scalar"))
            throw parse_error("each left op needs fields i, j, scalar");
        Int i1 = int_from_json(jo["i"], "op index i");
        Int j1 = int_from_json(jo["j"], "op index j");
        if (i1 < 1 || j1 < 1) throw parse_error("op indices are 1-based and must be >= 1");
        ElementaryOp op;
        op.side = OpSide::left_row;
        op.i = static_cast<int>(checked_ll(i1, "op index i")) - 1;
        op.j = static_cast<int>(checked_ll(j1, "op index j")) - 1;
        op.scalar = elem_from_json(c.ring, jo["scalar"]);
        c.left_ops.push_back(std::move(op));
    }
    c.q = matrix_from_json(c.ring, j["Q"]);
    c.q_inv = matrix_from_json(c.ring, j["Q_inv"]);
    if (!j["diag"].is_array()) throw parse_error("diag must be an array");
    for (const auto& jd : j["diag"]) c.diag.push_back(elem_from_json(c.ring, jd));
    return c;
}

ordered_json verdict_to_json(const Verdict& v) {
    ordered_json j;
    j["replay_equation"] = v.replay_equation;
    j["q_inverse"] = v.q_inverse;
    j["divisibility"] = v.divisibility;
    j["canonical_diag"] = v.canonical_diag;
    j["left_det_one"] = v.left_det_one;
    j["ok"] = v.ok();
    return j;
}

ordered_json report_to_json(const PropertyReport& r) {
    ordered_json j;
    j["ring"] = r.ring;
    j["bezout"] = r.bezout;
    j["hermite"] = r.hermite;
    j["sr1"] = r.sr1;
    j["all_adequate"] = r.all_adequate;
    j["clean"] = r.clean;
    j["edr_2x2"] = r.edr_2x2;
    ordered_json cx = ordered_json::object();
    auto put = [&](const char* name, const std::optional<std::string>& c) {
        if (c) cx[name] = *c;
    };
    put("bezout", r.bezout_counterexample);
    put("hermite", r.hermite_counterexample);
    put("sr1", r.sr1_counterexample);
    put("all_adequate", r.all_adequate_counterexample);
    put("clean", r.clean_counterexample);
    put("edr_2x2", r.edr_2x2_counterexample);
    j["counterexamples"] = std::move(cx);
    return j;
}

}  // namespace bezred
