#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "orbitpit/affine.hpp"
#include "orbitpit/branching.hpp"
#include "orbitpit/diagonal.hpp"
#include "orbitpit/errors.hpp"
#include "orbitpit/invariants.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/pit.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/sparse_poly.hpp"
#include "orbitpit/trace_power.hpp"

// JSON wire formats.  Rationals travel as "p/q" strings (plain integers are
// accepted on input); schema violations raise parse_error naming the
// offending path.

namespace orbitpit {

using Json = nlohmann::json;

namespace jsondetail {

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
    throw parse_error(path + ": " + message);
}

inline const Json& member(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(path, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

inline std::size_t count_from_json(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        fail(path, "expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

}  // namespace jsondetail

inline Json rational_to_json(const Rational& value) { return format_rational(value); }

inline Rational rational_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    if (!j.is_string()) {
        jsondetail::fail(path, "expected a rational as \"p/q\" string or integer");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const parse_error& e) {
        jsondetail::fail(path, e.what());
    }
}

inline Json point_to_json(const std::vector<Rational>& point) {
    Json j = Json::array();
    for (const Rational& coordinate : point) {
        j.push_back(rational_to_json(coordinate));
    }
    return j;
}

inline std::vector<Rational> point_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) {
        jsondetail::fail(path, "expected an array of rationals");
    }
    std::vector<Rational> point;
    point.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        point.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return point;
}

// --------------------------------------------------------------------------
// Affine forms: {"c": "p/q", "lin": {"<var>": "p/q", ...}}
// --------------------------------------------------------------------------

inline Json affine_to_json(const AffineForm& form) {
    Json lin = Json::object();
    for (const auto& [index, coefficient] : form.linear()) {
        lin[std::to_string(index)] = rational_to_json(coefficient);
    }
    return Json{{"c", rational_to_json(form.constant())}, {"lin", std::move(lin)}};
}

inline AffineForm affine_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) {
        jsondetail::fail(path, "expected an affine form object");
    }
    AffineForm form;
    if (j.contains("c")) {
        form.set_constant(rational_from_json(j["c"], path + ".c"));
    }
    if (j.contains("lin")) {
        const Json& lin = j["lin"];
        if (!lin.is_object()) {
            jsondetail::fail(path + ".lin", "expected an object keyed by variable index");
        }
        for (const auto& [key, value] : lin.items()) {
            std::size_t index = 0;
            try {
                index = std::stoul(key);
            } catch (const std::exception&) {
                jsondetail::fail(path + ".lin", "bad variable index \"" + key + "\"");
            }
            form.set_linear(index, rational_from_json(value, path + ".lin." + key));
        }
    }
    return form;
}

inline Json affine_matrix_to_json(const AffineMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(affine_to_json(m.at(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline AffineMatrix affine_matrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        jsondetail::fail(path, "expected a nonempty array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        jsondetail::fail(path + "[0]", "expected a nonempty row array");
    }
    const std::size_t cols = j[0].size();
    AffineMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != cols) {
            jsondetail::fail(row_path, "expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m.at(i, c) = affine_from_json(j[i][c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

// --------------------------------------------------------------------------
// Scalar matrices: [["p/q", ...], ...]
// --------------------------------------------------------------------------

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(rational_to_json(m.at(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        jsondetail::fail(path, "expected a nonempty array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        jsondetail::fail(path + "[0]", "expected a nonempty row array");
    }
    const std::size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != cols) {
            jsondetail::fail(row_path, "expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m.at(i, c) = rational_from_json(j[i][c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

// --------------------------------------------------------------------------
// Circuits: {"kind": "abp" | "roabp" | "trace_power", "nvars": ..., "layers": [...]}
// ROABP entries are univariate coefficient arrays ["c0", "c1", ...] in the
// layer's variable; ROABPs additionally carry "degree".
// --------------------------------------------------------------------------

inline Json abp_to_json(const Abp& p) {
    Json layers = Json::array();
    for (const AffineMatrix& layer : p.layers()) {
        layers.push_back(affine_matrix_to_json(layer));
    }
    return Json{{"kind", "abp"}, {"nvars", p.nvars()}, {"layers", std::move(layers)}};
}

inline Abp abp_from_json(const Json& j, const std::string& path = "$") {
    const std::size_t nvars =
        jsondetail::count_from_json(jsondetail::member(j, "nvars", path), path + ".nvars");
    const Json& layers_json = jsondetail::member(j, "layers", path);
    if (!layers_json.is_array() || layers_json.empty()) {
        jsondetail::fail(path + ".layers", "expected a nonempty array of layer matrices");
    }
    std::vector<AffineMatrix> layers;
    layers.reserve(layers_json.size());
    for (std::size_t i = 0; i < layers_json.size(); ++i) {
        layers.push_back(affine_matrix_from_json(layers_json[i],
                                                 path + ".layers[" + std::to_string(i) + "]"));
    }
    try {
        return Abp(nvars, std::move(layers));
    } catch (const std::invalid_argument& e) {
        jsondetail::fail(path, e.what());
    }
}

inline Json roabp_to_json(const Roabp& p) {
    Json layers = Json::array();
    for (std::size_t i = 0; i < p.depth(); ++i) {
        const PolyMatrix& layer = p.layer(i);
        Json rows = Json::array();
        for (std::size_t a = 0; a < layer.rows(); ++a) {
            Json row = Json::array();
            for (std::size_t b = 0; b < layer.cols(); ++b) {
                Json coeffs = Json::array();
                for (std::size_t k = 0; k < p.degree_bound(); ++k) {
                    coeffs.push_back(
                        rational_to_json(layer.at(a, b).coeff(Monomial::variable(i, k))));
                }
                row.push_back(std::move(coeffs));
            }
            rows.push_back(std::move(row));
        }
        layers.push_back(std::move(rows));
    }
    return Json{{"kind", "roabp"},
                {"nvars", p.nvars()},
                {"degree", p.degree_bound()},
                {"layers", std::move(layers)}};
}

inline Roabp roabp_from_json(const Json& j, const std::string& path = "$") {
    const std::size_t nvars =
        jsondetail::count_from_json(jsondetail::member(j, "nvars", path), path + ".nvars");
    const std::size_t degree =
        jsondetail::count_from_json(jsondetail::member(j, "degree", path), path + ".degree");
    const Json& layers_json = jsondetail::member(j, "layers", path);
    if (!layers_json.is_array() || layers_json.size() != nvars) {
        jsondetail::fail(path + ".layers",
                         "expected exactly nvars = " + std::to_string(nvars) + " layers");
    }
    std::vector<PolyMatrix> layers;
    layers.reserve(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        const std::string layer_path = path + ".layers[" + std::to_string(i) + "]";
        const Json& layer_json = layers_json[i];
        if (!layer_json.is_array() || layer_json.empty()) {
            jsondetail::fail(layer_path, "expected a nonempty array of rows");
        }
        const std::size_t rows = layer_json.size();
        if (!layer_json[0].is_array() || layer_json[0].empty()) {
            jsondetail::fail(layer_path + "[0]", "expected a nonempty row array");
        }
        const std::size_t cols = layer_json[0].size();
        PolyMatrix layer(rows, cols);
        for (std::size_t a = 0; a < rows; ++a) {
            const std::string row_path = layer_path + "[" + std::to_string(a) + "]";
            if (!layer_json[a].is_array() || layer_json[a].size() != cols) {
                jsondetail::fail(row_path,
                                 "expected a row of " + std::to_string(cols) + " entries");
            }
            for (std::size_t b = 0; b < cols; ++b) {
                const std::string entry_path = row_path + "[" + std::to_string(b) + "]";
                const Json& coeffs = layer_json[a][b];
                if (!coeffs.is_array()) {
                    jsondetail::fail(entry_path, "expected a coefficient array");
                }
                SparsePoly entry(nvars);
                for (std::size_t k = 0; k < coeffs.size(); ++k) {
                    entry.add_term(
                        Monomial::variable(i, k),
                        rational_from_json(coeffs[k], entry_path + "[" + std::to_string(k) + "]"));
                }
                layer.at(a, b) = std::move(entry);
            }
        }
        layers.push_back(std::move(layer));
    }
    try {
        return Roabp(degree, std::move(layers));
    } catch (const std::invalid_argument& e) {
        jsondetail::fail(path, e.what());
    }
}

inline Json trace_power_to_json(const TracePower& t) {
    Json layers = Json::array();
    layers.push_back(affine_matrix_to_json(t.matrix()));
    return Json{{"kind", "trace_power"},
                {"nvars", t.nvars()},
                {"exponent", t.exponent()},
                {"layers", std::move(layers)}};
}

inline TracePower trace_power_from_json(const Json& j, const std::string& path = "$") {
    const std::size_t nvars =
        jsondetail::count_from_json(jsondetail::member(j, "nvars", path), path + ".nvars");
    const std::size_t exponent =
        jsondetail::count_from_json(jsondetail::member(j, "exponent", path), path + ".exponent");
    const Json& layers_json = jsondetail::member(j, "layers", path);
    if (!layers_json.is_array() || layers_json.size() != 1) {
        jsondetail::fail(path + ".layers", "expected exactly one matrix");
    }
    AffineMatrix matrix = affine_matrix_from_json(layers_json[0], path + ".layers[0]");
    try {
        return TracePower(nvars, exponent, std::move(matrix));
    } catch (const std::invalid_argument& e) {
        jsondetail::fail(path, e.what());
    }
}

using Circuit = std::variant<Abp, Roabp, TracePower>;

inline Circuit circuit_from_json(const Json& j, const std::string& path = "$") {
    const Json& kind = jsondetail::member(j, "kind", path);
    if (!kind.is_string()) {
        jsondetail::fail(path + ".kind", "expected a string");
    }
    const std::string name = kind.get<std::string>();
    if (name == "abp") {
        return abp_from_json(j, path);
    }
    if (name == "roabp") {
        return roabp_from_json(j, path);
    }
    if (name == "trace_power") {
        return trace_power_from_json(j, path);
    }
    jsondetail::fail(path + ".kind", "unknown circuit kind \"" + name + "\"");
}

// --------------------------------------------------------------------------
// Matrix tuples: {"n": ..., "r": ..., "matrices": [matrix, ...]}
// --------------------------------------------------------------------------

inline Json matrix_tuple_to_json(const MatrixTuple& t) {
    Json matrices = Json::array();
    for (const Matrix& m : t.matrices()) {
        matrices.push_back(matrix_to_json(m));
    }
    return Json{{"n", t.n()}, {"r", t.r()}, {"matrices", std::move(matrices)}};
}

inline MatrixTuple matrix_tuple_from_json(const Json& j, const std::string& path = "$") {
    const std::size_t n =
        jsondetail::count_from_json(jsondetail::member(j, "n", path), path + ".n");
    const std::size_t r =
        jsondetail::count_from_json(jsondetail::member(j, "r", path), path + ".r");
    const Json& matrices_json = jsondetail::member(j, "matrices", path);
    if (!matrices_json.is_array() || matrices_json.size() != r) {
        jsondetail::fail(path + ".matrices", "expected exactly r = " + std::to_string(r) +
                                                 " matrices");
    }
    std::vector<Matrix> matrices;
    matrices.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        const std::string matrix_path = path + ".matrices[" + std::to_string(i) + "]";
        Matrix m = matrix_from_json(matrices_json[i], matrix_path);
        if (m.rows() != n || m.cols() != n) {
            jsondetail::fail(matrix_path, "expected an " + std::to_string(n) + "x" +
                                              std::to_string(n) + " matrix, got " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
        }
        matrices.push_back(std::move(m));
    }
    try {
        return MatrixTuple(std::move(matrices));
    } catch (const std::invalid_argument& e) {
        jsondetail::fail(path, e.what());
    }
}

// --------------------------------------------------------------------------
// Diagonal circuits: {"n": ..., "terms": [{"L": [affine, ...], "e": [ints]}]}
// --------------------------------------------------------------------------

inline Json diagonal_to_json(const DiagonalCircuit& c) {
    Json terms = Json::array();
    for (const DiagonalTerm& term : c.terms()) {
        Json forms = Json::array();
        for (const AffineForm& form : term.forms) {
            forms.push_back(affine_to_json(form));
        }
        Json exponents = Json::array();
        for (std::size_t e : term.exponents) {
            exponents.push_back(e);
        }
        terms.push_back(Json{{"L", std::move(forms)}, {"e", std::move(exponents)}});
    }
    return Json{{"n", c.nvars()}, {"terms", std::move(terms)}};
}

inline DiagonalCircuit diagonal_from_json(const Json& j, const std::string& path = "$") {
    const std::size_t n =
        jsondetail::count_from_json(jsondetail::member(j, "n", path), path + ".n");
    const Json& terms_json = jsondetail::member(j, "terms", path);
    if (!terms_json.is_array()) {
        jsondetail::fail(path + ".terms", "expected an array of terms");
    }
    std::vector<DiagonalTerm> terms;
    terms.reserve(terms_json.size());
    for (std::size_t i = 0; i < terms_json.size(); ++i) {
        const std::string term_path = path + ".terms[" + std::to_string(i) + "]";
        const Json& forms_json = jsondetail::member(terms_json[i], "L", term_path);
        const Json& exps_json = jsondetail::member(terms_json[i], "e", term_path);
        if (!forms_json.is_array() || !exps_json.is_array() ||
            forms_json.size() != exps_json.size()) {
            jsondetail::fail(term_path, "\"L\" and \"e\" must be arrays of equal length");
        }
        DiagonalTerm term;
        for (std::size_t k = 0; k < forms_json.size(); ++k) {
            term.forms.push_back(
                affine_from_json(forms_json[k], term_path + ".L[" + std::to_string(k) + "]"));
            term.exponents.push_back(jsondetail::count_from_json(
                exps_json[k], term_path + ".e[" + std::to_string(k) + "]"));
        }
        terms.push_back(std::move(term));
    }
    try {
        return DiagonalCircuit(n, std::move(terms));
    } catch (const std::invalid_argument& e) {
        jsondetail::fail(path, e.what());
    }
}

// --------------------------------------------------------------------------
// Hitting sets (point lists), polynomials, verdicts
// --------------------------------------------------------------------------

inline Json hitting_set_to_json(const HittingSet& h) {
    Json points = Json::array();
    for (const std::vector<Rational>& point : h.points) {
        points.push_back(point_to_json(point));
    }
    return points;
}

inline HittingSet hitting_set_from_json(const Json& j, const std::string& path = "$") {
    if (!j.is_array()) {
        jsondetail::fail(path, "expected an array of points");
    }
    HittingSet set;
    set.provenance = HittingSetProvenance::File;
    for (std::size_t i = 0; i < j.size(); ++i) {
        set.points.push_back(point_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    }
    for (const std::vector<Rational>& point : set.points) {
        if (point.size() != set.arity()) {
            jsondetail::fail(path, "points have mixed arities");
        }
    }
    return set;
}

inline Json monomial_to_json(const Monomial& m) {
    Json exps = Json::object();
    for (const auto& [index, exp] : m.exponents()) {
        exps[std::to_string(index)] = exp;
    }
    return exps;
}

inline Json sparse_poly_to_json(const SparsePoly& f) {
    Json terms = Json::array();
    for (const auto& [monomial, coefficient] : f.terms()) {
        terms.push_back(Json{{"monomial", monomial_to_json(monomial)},
                             {"coeff", rational_to_json(coefficient)}});
    }
    return Json{{"nvars", f.nvars()}, {"terms", std::move(terms)}};
}

inline const char* certificate_name(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::Whitebox:
            return "whitebox";
        case CertificateKind::BlackboxDeterministic:
            return "blackbox-deterministic";
        case CertificateKind::Randomized:
            return "randomized";
    }
    return "unknown";
}

inline Json pit_verdict_to_json(const PitVerdict& v) {
    Json j{{"is_zero", v.is_zero}, {"certificate", certificate_name(v.certificate)}};
    if (v.witness_point.has_value()) {
        j["witness"]["point"] = point_to_json(v.witness_point->first);
        j["witness"]["value"] = rational_to_json(v.witness_point->second);
    }
    if (v.witness_monomial.has_value()) {
        j["witness"]["monomial"] = monomial_to_json(*v.witness_monomial);
    }
    if (v.confidence.has_value()) {
        j["confidence"] = rational_to_json(*v.confidence);
    }
    return j;
}

inline Json orbit_closure_verdict_to_json(const OrbitClosureVerdict& v) {
    Json j{{"decision", v.decision == ClosureDecision::Intersecting ? "intersecting" : "disjoint"},
           {"method", v.method == VerdictMethod::Whitebox ? "whitebox" : "randomized"}};
    if (v.witness.has_value()) {
        j["witness"]["ell"] = v.witness->ell;
        j["witness"]["point"] = point_to_json(v.witness->point);
    }
    return j;
}

inline Json orbit_membership_verdict_to_json(const OrbitMembershipVerdict& v) {
    Json j{{"decision", v.decision == MembershipDecision::Member ? "member" : "non-member"},
           {"method", v.method == VerdictMethod::Whitebox ? "whitebox" : "randomized"}};
    if (v.witness.has_value()) {
        j["witness"]["matrix"] = matrix_to_json(*v.witness);
    }
    if (v.confidence.has_value()) {
        j["confidence"] = rational_to_json(*v.confidence);
    }
    return j;
}

}  // namespace orbitpit
