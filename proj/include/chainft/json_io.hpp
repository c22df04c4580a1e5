#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chainft/cft.hpp"

namespace chainft {

using nlohmann::json;

// Structurally valid JSON with missing or ill-typed fields lands here; text
// that fails to parse at all keeps nlohmann's own exception type. Either way
// the input was malformed, as opposed to a well-formed object that violates a
// mathematical invariant (those surface as std::invalid_argument from the
// types themselves).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& expect_field(const json& j, const std::string& key, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(what + ": missing field \"" + key + "\"");
    return *it;
}

// integers may arrive as JSON numbers or as decimal strings (the complex
// format mandates strings so coefficients never pass through doubles)
inline Int json_to_int(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            const Rat r = parse_fraction(s);
            if (!is_integer(r)) throw ParseError(what + ": expected an integer, got \"" + s + "\"");
            return numerator(r);
        } catch (const std::invalid_argument&) {
            throw ParseError(what + ": not an integer: \"" + s + "\"");
        }
    }
    throw ParseError(what + ": expected an integer or decimal string");
}

inline json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v < lo || v > hi) return v.str();
    return v.convert_to<long long>();
}

inline Index json_to_index(const json& j, const std::string& what) {
    const Int v = json_to_int(j, what);
    if (v < 0) throw ParseError(what + ": expected a non-negative integer");
    return v.convert_to<Index>();
}

inline Rat json_to_rat(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_unsigned()) return Rat(j.get<unsigned long long>());
    if (!j.is_string()) throw ParseError(what + ": expected a fraction string \"p/q\"");
    try {
        return parse_fraction(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        throw ParseError(what + ": not a fraction: \"" + j.get<std::string>() + "\"");
    }
}

inline Index resolve_label(const Complex& complex, Index degree, const std::string& label,
                           const std::string& what) {
    const auto idx = complex.cell_index(degree, label);
    if (!idx)
        throw ParseError(what + ": no cell labeled \"" + label + "\" in degree " +
                         std::to_string(degree));
    return *idx;
}

}  // namespace detail

// {"top_dim": d, "cells": [[labels]...], "boundary": {"1": [[row, col, coeff]...], ...}}
// with coefficients as decimal strings. Entries are emitted row-major and
// degrees with no nonzero entries are kept as empty arrays, so the output is
// canonical; on input, missing degrees simply mean a zero boundary matrix.
inline json complex_to_json(const Complex& complex) {
    json cells = json::array();
    for (Index d = 0; d <= complex.top_dim(); ++d) cells.push_back(complex.labels(d));
    json boundary = json::object();
    for (Index d = 1; d <= complex.top_dim(); ++d) {
        const IntMatrix m = complex.boundary_matrix(d);
        json rows = json::array();
        for (const auto& [key, value] : m.entries())
            rows.push_back(json::array({key.first, key.second, value.str()}));
        boundary[std::to_string(d)] = std::move(rows);
    }
    return json{{"top_dim", complex.top_dim()}, {"cells", cells}, {"boundary", boundary}};
}

inline Complex complex_from_json(const json& j) {
    const Index top = detail::json_to_index(detail::expect_field(j, "top_dim", "complex"),
                                            "complex: top_dim");
    const json& cells = detail::expect_field(j, "cells", "complex");
    if (!cells.is_array() || cells.size() != top + 1)
        throw ParseError("complex: \"cells\" must list labels for degrees 0.." +
                         std::to_string(top));
    std::vector<std::vector<std::string>> labels;
    for (const json& level : cells) {
        if (!level.is_array()) throw ParseError("complex: each entry of \"cells\" must be a list");
        std::vector<std::string> names;
        for (const json& name : level) {
            if (!name.is_string()) throw ParseError("complex: cell labels must be strings");
            names.push_back(name.get<std::string>());
        }
        labels.push_back(std::move(names));
    }

    std::vector<IntMatrix> matrices;
    for (Index d = 1; d <= top; ++d)
        matrices.emplace_back(labels[d - 1].size(), labels[d].size());
    const json& boundary = detail::expect_field(j, "boundary", "complex");
    if (!boundary.is_object()) throw ParseError("complex: \"boundary\" must be an object");
    for (const auto& [key, rows] : boundary.items()) {
        Index d = 0;
        try {
            d = detail::json_to_index(json(key), "complex: boundary degree");
        } catch (const ParseError&) {
            throw ParseError("complex: boundary key \"" + key + "\" is not a degree");
        }
        if (d < 1 || d > top)
            throw ParseError("complex: boundary key \"" + key + "\" outside degrees 1.." +
                             std::to_string(top));
        if (!rows.is_array())
            throw ParseError("complex: boundary[\"" + key + "\"] must be a list of entries");
        for (const json& entry : rows) {
            if (!entry.is_array() || entry.size() != 3)
                throw ParseError("complex: boundary entries are [row, col, coeff] triples");
            const std::string what = "complex: boundary[\"" + key + "\"]";
            const Index row = detail::json_to_index(entry[0], what + " row");
            const Index col = detail::json_to_index(entry[1], what + " col");
            IntMatrix& m = matrices[d - 1];
            if (row >= m.rows() || col >= m.cols())
                throw ParseError(what + ": entry (" + std::to_string(row) + ", " +
                                 std::to_string(col) + ") outside a " + std::to_string(m.rows()) +
                                 "x" + std::to_string(m.cols()) + " matrix");
            m.set(row, col, detail::json_to_int(entry[2], what + " coefficient"));
        }
    }
    // shape is sound; d*d = 0 and label uniqueness are the complex's own business
    return Complex::from_chain_data(std::move(matrices), std::move(labels));
}

// {"degree": k, "coeffs": {"label": n, ...}}
inline json chain_to_json(const Chain& c) {
    json coeffs = json::object();
    for (const auto& [cell, value] : c.coeffs())
        coeffs[c.complex().label(c.degree(), cell)] = detail::int_to_json(value);
    return json{{"degree", c.degree()}, {"coeffs", coeffs}};
}

inline Chain chain_from_json(const Complex& complex, const json& j) {
    const Index degree =
        detail::json_to_index(detail::expect_field(j, "degree", "chain"), "chain: degree");
    const json& coeffs = detail::expect_field(j, "coeffs", "chain");
    if (!coeffs.is_object()) throw ParseError("chain: \"coeffs\" must map labels to integers");
    Chain c(complex, degree);
    for (const auto& [label, value] : coeffs.items())
        c.set(detail::resolve_label(complex, degree, label, "chain"),
              detail::json_to_int(value, "chain: coefficient of \"" + label + "\""));
    return c;
}

// {"degree": k, "values": {"label": "p/q", ...}} with reduced fractions
inline json cochain_to_json(const RationalCochain& w) {
    json values = json::object();
    for (const auto& [cell, value] : w.values())
        values[w.complex().label(w.degree(), cell)] = to_fraction_string(value);
    return json{{"degree", w.degree()}, {"values", values}};
}

inline RationalCochain cochain_from_json(const Complex& complex, const json& j) {
    const Index degree =
        detail::json_to_index(detail::expect_field(j, "degree", "cochain"), "cochain: degree");
    const json& values = detail::expect_field(j, "values", "cochain");
    if (!values.is_object()) throw ParseError("cochain: \"values\" must map labels to fractions");
    RationalCochain w(complex, degree);
    for (const auto& [label, value] : values.items())
        w.set(detail::resolve_label(complex, degree, label, "cochain"),
              detail::json_to_rat(value, "cochain: value of \"" + label + "\""));
    return w;
}

// {"degree": k, "basis_phases": ["p/q", ...], "curvature": cochain} — phases
// in the order of the deterministic cycle basis of the character's degree
inline json character_to_json(const DifferentialCharacter& f) {
    json phases = json::array();
    for (const Phase& p : f.basis_phases()) phases.push_back(to_fraction_string(p.value()));
    return json{{"degree", f.degree()},
                {"basis_phases", phases},
                {"curvature", cochain_to_json(f.curvature())}};
}

inline DifferentialCharacter character_from_json(const Complex& complex, const json& j) {
    const Index degree =
        detail::json_to_index(detail::expect_field(j, "degree", "character"), "character: degree");
    const json& listed = detail::expect_field(j, "basis_phases", "character");
    if (!listed.is_array()) throw ParseError("character: \"basis_phases\" must be a list");
    std::vector<Phase> phases;
    for (const json& p : listed)
        phases.emplace_back(detail::json_to_rat(p, "character: basis phase"));
    const RationalCochain curvature =
        cochain_from_json(complex, detail::expect_field(j, "curvature", "character"));
    if (curvature.degree() != degree + 1)
        throw ParseError("character: curvature must have degree " + std::to_string(degree + 1) +
                         ", got " + std::to_string(curvature.degree()));
    const Index expected = DifferentialCharacter::cycle_basis_size(complex, degree);
    if (phases.size() != expected)
        throw ParseError("character: expected " + std::to_string(expected) +
                         " basis phases, got " + std::to_string(phases.size()));
    return DifferentialCharacter(complex, degree, std::move(phases), curvature);
}

// {"degree": k, "lift": {"label": "p/q", ...}, "curvature": cochain} — cells
// absent from "lift" carry phase zero
inline json theory_to_json(const ChainFieldTheory& e) {
    json lift = json::object();
    for (Index i = 0; i < e.lift().size(); ++i)
        if (!e.lift()[i].is_zero())
            lift[e.complex().label(e.degree(), i)] = to_fraction_string(e.lift()[i].value());
    return json{{"degree", e.degree()},
                {"lift", lift},
                {"curvature", cochain_to_json(e.curvature())}};
}

inline ChainFieldTheory theory_from_json(const Complex& complex, const json& j) {
    const Index degree =
        detail::json_to_index(detail::expect_field(j, "degree", "theory"), "theory: degree");
    const json& lift = detail::expect_field(j, "lift", "theory");
    if (!lift.is_object()) throw ParseError("theory: \"lift\" must map labels to fractions");
    std::vector<Phase> phases(complex.cell_count(degree));
    for (const auto& [label, value] : lift.items())
        phases[detail::resolve_label(complex, degree, label, "theory")] =
            Phase(detail::json_to_rat(value, "theory: lift of \"" + label + "\""));
    const RationalCochain curvature =
        cochain_from_json(complex, detail::expect_field(j, "curvature", "theory"));
    if (curvature.degree() != degree + 1)
        throw ParseError("theory: curvature must have degree " + std::to_string(degree + 1) +
                         ", got " + std::to_string(curvature.degree()));
    return ChainFieldTheory(complex, degree, std::move(phases), curvature);
}

// {"phases": {"0": "p/q", ...}} keyed by cycle-basis index; every index is
// written, zeros included, so the phase count survives the round trip
inline json witness_to_json(const IsoWitness& w) {
    json phases = json::object();
    for (Index i = 0; i < w.phases.size(); ++i)
        phases[std::to_string(i)] = to_fraction_string(w.phases[i].value());
    return json{{"phases", phases}};
}

inline IsoWitness witness_from_json(const json& j) {
    const json& listed = detail::expect_field(j, "phases", "witness");
    if (!listed.is_object()) throw ParseError("witness: \"phases\" must map indices to fractions");
    std::map<Index, Rat> by_index;
    for (const auto& [key, value] : listed.items()) {
        Index i = 0;
        try {
            i = detail::json_to_index(json(key), "witness: index");
        } catch (const ParseError&) {
            throw ParseError("witness: key \"" + key + "\" is not a cycle-basis index");
        }
        by_index[i] = detail::json_to_rat(value, "witness: phase at index " + key);
    }
    IsoWitness w;
    if (!by_index.empty()) w.phases.resize(by_index.rbegin()->first + 1);
    for (const auto& [i, value] : by_index) w.phases[i] = Phase(value);
    return w;
}

}  // namespace chainft
