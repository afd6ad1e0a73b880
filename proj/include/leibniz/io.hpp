#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "leibniz/algebra.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/prelude.hpp"

namespace leibniz {

/// Insertion-ordered JSON so that serialized output is byte-stable.
using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_keys(const Json& object, std::initializer_list<const char*> allowed,
                                const char* where) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known)
            throw ParseError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
}

inline Eigen::Index require_index(const Json& object, const char* key, const char* where) {
    if (!object.contains(key) || !object[key].is_number_integer())
        throw ParseError(std::string(where) + ": missing or non-integer '" + key + "'");
    return object[key].get<Eigen::Index>();
}

inline double require_number(const Json& object, const char* key, const char* where) {
    if (!object.contains(key) || !object[key].is_number())
        throw ParseError(std::string(where) + ": missing or non-numeric '" + key + "'");
    return object[key].get<double>();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace detail

/// Sparse bracket-table form of an algebra: {"dim": n, "brackets": [...]},
/// each record {"i","j","k","re","im"} giving the e_k coefficient of
/// [e_i, e_j]. Records are emitted in lexicographic (i, j, k) order and
/// zero coefficients are omitted, so equal tensors serialize identically.
inline Json algebra_to_json(const LeibnizAlgebra& a) {
    Json out;
    out["dim"] = a.dim();
    Json brackets = Json::array();
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j < a.dim(); ++j)
            for (Eigen::Index k = 0; k < a.dim(); ++k) {
                Complex v = a.c(i, j, k);
                if (v == Complex(0.0)) continue;
                Json record;
                record["i"] = i;
                record["j"] = j;
                record["k"] = k;
                record["re"] = v.real();
                record["im"] = v.imag();
                brackets.push_back(std::move(record));
            }
    out["brackets"] = std::move(brackets);
    return out;
}

inline std::string serialize_algebra(const LeibnizAlgebra& a) {
    return algebra_to_json(a).dump();
}

/// Parses the sparse form. The returned algebra is *not* checked against the
/// bracket identity — run check_leibniz and decide what a violation means at
/// the call site (the checker command wants to report violations, not throw).
inline LeibnizAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("algebra file: top level must be an object");
    detail::reject_unknown_keys(j, {"dim", "basis", "brackets"}, "algebra file");
    Eigen::Index dim = detail::require_index(j, "dim", "algebra file");
    if (dim <= 0) throw ParseError("algebra file: 'dim' must be positive");
    if (!j.contains("brackets") || !j["brackets"].is_array())
        throw ParseError("algebra file: missing or non-array 'brackets'");

    AlgebraBuilder builder(dim);
    std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index>> seen;
    for (const auto& record : j["brackets"]) {
        if (!record.is_object())
            throw ParseError("algebra file: bracket records must be objects");
        detail::reject_unknown_keys(record, {"i", "j", "k", "re", "im"}, "bracket record");
        Eigen::Index i = detail::require_index(record, "i", "bracket record");
        Eigen::Index jj = detail::require_index(record, "j", "bracket record");
        Eigen::Index k = detail::require_index(record, "k", "bracket record");
        if (i < 0 || i >= dim || jj < 0 || jj >= dim || k < 0 || k >= dim)
            throw ParseError("bracket record: index out of range for dim " +
                             std::to_string(dim));
        double re = detail::require_number(record, "re", "bracket record");
        double im = record.contains("im") ? detail::require_number(record, "im", "bracket record")
                                          : 0.0;
        auto triple = std::make_tuple(i, jj, k);
        for (const auto& t : seen)
            if (t == triple)
                throw ParseError("bracket record: duplicate (i,j,k) = (" + std::to_string(i) +
                                 "," + std::to_string(jj) + "," + std::to_string(k) + ")");
        seen.push_back(triple);
        builder.set(i, jj, k, Complex(re, im));
    }

    if (j.contains("basis")) {
        if (!j["basis"].is_array() || static_cast<Eigen::Index>(j["basis"].size()) != dim)
            throw ParseError("algebra file: 'basis' must list exactly dim labels");
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (!j["basis"][i].is_string())
                throw ParseError("algebra file: basis labels must be strings");
            builder.label(i, j["basis"][i].get<std::string>());
        }
    }
    return builder.build_unchecked();
}

inline LeibnizAlgebra parse_algebra(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("algebra file: ") + e.what());
    }
    return algebra_from_json(j);
}

inline LeibnizAlgebra load_algebra(const std::string& path) {
    return parse_algebra(detail::read_file(path));
}

/// Dense row-major matrix form: {"rows", "cols", "entries": [[re, im], ...]}.
inline Json matrix_to_json(const CMatrix& m) {
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    out["entries"] = std::move(entries);
    return out;
}

inline std::string serialize_matrix(const CMatrix& m) { return matrix_to_json(m).dump(); }

inline CMatrix matrix_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("matrix file: top level must be an object");
    detail::reject_unknown_keys(j, {"rows", "cols", "entries"}, "matrix file");
    Eigen::Index rows = detail::require_index(j, "rows", "matrix file");
    Eigen::Index cols = detail::require_index(j, "cols", "matrix file");
    if (rows <= 0 || cols <= 0)
        throw ParseError("matrix file: 'rows' and 'cols' must be positive");
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ParseError("matrix file: missing or non-array 'entries'");
    if (static_cast<Eigen::Index>(j["entries"].size()) != rows * cols)
        throw ParseError("matrix file: expected " + std::to_string(rows * cols) +
                         " entries, got " + std::to_string(j["entries"].size()));
    CMatrix m(rows, cols);
    Eigen::Index at = 0;
    for (const auto& entry : j["entries"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw ParseError("matrix file: entries must be [re, im] pairs");
        m(at / cols, at % cols) = Complex(entry[0].get<double>(), entry[1].get<double>());
        ++at;
    }
    return m;
}

inline CMatrix parse_matrix(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix file: ") + e.what());
    }
    return matrix_from_json(j);
}

inline CMatrix load_matrix(const std::string& path) {
    return parse_matrix(detail::read_file(path));
}

}  // namespace leibniz
