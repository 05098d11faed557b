#include "cyvhs/serialize.hpp"

#include <sstream>

namespace cyvhs {

namespace {

const json& at(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::size_t size_at(const json& j, const char* key) {
    const json& v = at(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ParseError(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

int int_at(const json& j, const char* key) {
    const json& v = at(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

std::string exponent_key(const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
    }
    return s;
}

Exponent parse_exponent(const std::string& key, std::size_t m) {
    Exponent e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad multidegree '" + key + "'");
        e.push_back(std::stoi(part));
    }
    if (m == 0 && key.empty()) return e;
    if (e.size() != m) throw ParseError("multidegree '" + key + "' has the wrong number of entries");
    return e;
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

json to_json(const Vector& v) {
    json out = json::array();
    for (auto& x : v) out.push_back(to_json(x));
    return out;
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
    return out;
}

Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw ParseError("rational must be a string \"p/q\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError("bad rational '" + j.get<std::string>() + "'");
    }
}

Vector vector_from_json(const json& j, std::size_t expect_size) {
    if (!j.is_array() || j.size() != expect_size) throw ParseError("vector of length " + std::to_string(expect_size) + " expected");
    Vector v;
    for (auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError("matrix with " + std::to_string(rows) + " rows expected");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        Vector row = vector_from_json(j[r], cols);
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

json vhs_to_json(const CanonicalVHS& vhs) {
    json j;
    j["family"] = family_name(vhs.family);
    j["size"] = vhs.size;
    j["dim_U"] = vhs.dim_U;
    j["weight"] = vhs.weight;
    j["Q"] = {{"gram", to_json(vhs.Q.gram)}, {"symmetry", vhs.Q.symmetry}};
    json g = json::array();
    for (auto& x : vhs.g_basis) g.push_back(to_json(x));
    j["g_basis"] = g;
    j["grading_element"] = to_json(vhs.grading_element);
    json pieces = json::array();
    for (auto& h : vhs.hodge_pieces) {
        json b = json::array();
        for (auto& v : h.space.vectors()) b.push_back(to_json(v));
        pieces.push_back({{"p", h.p}, {"q", h.q}, {"basis", b}});
    }
    j["hodge_pieces"] = pieces;
    return j;
}

CanonicalVHS vhs_from_json(const json& j) {
    CanonicalVHS v;
    const json& fam = at(j, "family");
    if (!fam.is_string()) throw ParseError("'family' must be a string");
    try {
        v.family = parse_family(fam.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    v.size = size_at(j, "size");
    v.dim_U = size_at(j, "dim_U");
    v.weight = int_at(j, "weight");
    if (v.dim_U == 0 || v.weight < 1) throw ParseError("dim_U and weight must be positive");
    const std::size_t d = v.dim_U;
    const json& q = at(j, "Q");
    v.Q.gram = matrix_from_json(at(q, "gram"), d, d);
    v.Q.symmetry = int_at(q, "symmetry");
    if (v.Q.symmetry != 1 && v.Q.symmetry != -1) throw ParseError("Q.symmetry must be 1 or -1");
    const json& g = at(j, "g_basis");
    if (!g.is_array()) throw ParseError("'g_basis' must be an array");
    for (auto& x : g) v.g_basis.push_back(matrix_from_json(x, d, d));
    v.grading_element = matrix_from_json(at(j, "grading_element"), d, d);
    const json& pieces = at(j, "hodge_pieces");
    if (!pieces.is_array() || pieces.size() != static_cast<std::size_t>(v.weight) + 1)
        throw ParseError("'hodge_pieces' must list weight + 1 pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        HodgePiece h;
        h.p = int_at(pieces[i], "p");
        h.q = int_at(pieces[i], "q");
        if (h.q != static_cast<int>(i) || h.p + h.q != v.weight) throw ParseError("hodge pieces out of order");
        const json& b = at(pieces[i], "basis");
        if (!b.is_array()) throw ParseError("'basis' must be an array");
        std::vector<Vector> vs;
        for (auto& x : b) vs.push_back(vector_from_json(x, d));
        h.space = Subspace::span(d, vs);
        if (h.space.dim() != vs.size()) throw ParseError("hodge piece basis is linearly dependent");
        v.hodge_pieces.push_back(std::move(h));
    }
    return v;
}

json charform_to_json(const CharForm& f) {
    json coeffs = json::object();
    for (std::size_t row = 0; row < f.multi_indices.size(); ++row) {
        json vals = json::object();
        for (std::size_t mu = 0; mu < f.codomain_dim(); ++mu)
            if (!f.coeffs(row, mu).is_zero()) vals[std::to_string(mu)] = to_json(f.coeffs(row, mu));
        if (!vals.empty()) coeffs[exponent_key(f.multi_indices[row])] = vals;
    }
    return {{"k", f.k}, {"domain_dim", f.domain_dim}, {"codomain_dim", f.codomain_dim()}, {"rank", f.rank()},
            {"coefficients", coeffs}};
}

json model_coeffs_to_json(const ModelCoeffs& m) {
    json r = json::object();
    for (std::size_t k = 1; k < m.r.size(); ++k) {
        json lv = json::array();
        for (auto& x : m.r[k]) lv.push_back(to_json(x));
        r[std::to_string(k)] = lv;
    }
    json rt = json::array();
    for (auto& f : m.rtilde) rt.push_back(charform_to_json(f));
    return {{"r", r}, {"rtilde", rt}};
}

json structure_report_to_json(const StructureReport& r) {
    json checks = json::array();
    for (auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"informational", c.informational}});
    return {{"checks", checks}, {"all_passed", r.all_passed()}};
}

json cohomology_to_json(const CochainComplexSlice& cx, const GradedEnd& graded, int weight) {
    json degrees = json::array();
    for (auto& [m, s] : cx.degrees)
        degrees.push_back({{"m", m},
                           {"c0_dim", s.c0_dim},
                           {"c1_dim", s.c1_dim},
                           {"c2_dim", s.c2_dim},
                           {"rank_delta0", s.rank0},
                           {"rank_delta1", s.rank1},
                           {"h1", s.h1()}});
    json gamma = json::array();
    bool gamma_zero = true, h1_zero = true;
    for (int l = -1; l <= weight; ++l) {
        std::size_t dim = centralizer_gamma(graded, l).dim();
        gamma_zero &= dim == 0;
        gamma.push_back({{"l", l}, {"dim", dim}});
    }
    for (auto& [m, h] : h1_graded(cx))
        if (m >= 1) h1_zero &= h == 0;
    return {{"degrees", degrees},
            {"c0_dim", cx.c0_dim},
            {"c1_dim", cx.c1_dim},
            {"c2_dim", cx.c2_dim},
            {"composite_zero", cx.composite_zero()},
            {"grading_preserved", cx.grading_preserved()},
            {"h1_positive_vanishes", h1_zero},
            {"gamma", gamma},
            {"gamma_vanishes", gamma_zero}};
}

json frame_to_json(const FrameJet& f) {
    const auto& t = *f.e.table();
    json entries = json::array();
    for (std::size_t r = 0; r < f.e.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < f.e.cols(); ++c) {
            json poly = json::object();
            for (std::size_t i = 0; i < t.size(); ++i)
                if (!f.e.coeff(i)(r, c).is_zero()) poly[exponent_key(t.exponent(i))] = to_json(f.e.coeff(i)(r, c));
            row.push_back(poly);
        }
        entries.push_back(row);
    }
    return {{"num_params", f.num_params()}, {"order", f.order()}, {"dim", f.e.rows()}, {"entries", entries}};
}

FrameJet frame_from_json(const json& j) {
    const std::size_t m = size_at(j, "num_params"), J = size_at(j, "order"), d = size_at(j, "dim");
    if (m == 0 || d == 0) throw ParseError("num_params and dim must be positive");
    if (J > 64) throw ParseError("jet order is unreasonably large");
    auto table = monomial_table(m, J);
    MatrixJet e(table, d, d);
    const json& entries = at(j, "entries");
    if (!entries.is_array() || entries.size() != d) throw ParseError("'entries' must have dim rows");
    for (std::size_t r = 0; r < d; ++r) {
        if (!entries[r].is_array() || entries[r].size() != d) throw ParseError("'entries' must have dim columns");
        for (std::size_t c = 0; c < d; ++c) {
            const json& poly = entries[r][c];
            if (!poly.is_object()) throw ParseError("frame entry must be an object of monomials");
            for (auto& [key, val] : poly.items()) {
                auto idx = table->index(parse_exponent(key, m));
                if (!idx) throw ParseError("monomial '" + key + "' exceeds the jet order");
                e.coeff(*idx)(r, c) = rational_from_json(val);
            }
        }
    }
    return {std::move(e)};
}

json verdict_to_json(const Verdict& v) {
    json j;
    j["status"] = v.congruent ? "congruent" : "obstructed";
    j["verified_order"] = v.verified_order;
    if (!v.congruent) {
        j["stage"] = v.stage;
        j["level"] = v.level;
        j["parameter"] = v.parameter;
        j["monomial"] = exponent_key(v.monomial);
        j["residue"] = to_json(v.residue);
        if (!v.residue_class.empty()) j["residue_class"] = to_json(v.residue_class);
    }
    return j;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cyvhs
