#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chainft/zmodule.hpp"

namespace chainft {

struct CellId {
    Index degree = 0;
    Index index = 0;
    std::string label;

    friend bool operator==(const CellId&, const CellId&) = default;
};

// Finite cellular complex presented by its integer boundary matrices.
// Construction validates d(d(x)) = 0, so a Complex in hand is always a
// genuine chain complex. Immutable after construction.
class Complex {
public:
    // boundaries[k-1] is the boundary matrix of degree k: one column per
    // k-cell, one row per (k-1)-cell. Labels are optional; default names are
    // v0..., e0..., f0..., then c<k>_<i>.
    static Complex from_chain_data(
        std::vector<IntMatrix> boundaries,
        std::optional<std::vector<std::vector<std::string>>> labels = std::nullopt) {
        Complex k;
        if (boundaries.empty()) {
            k.cells_.emplace_back();  // zero 0-cells
            if (labels && !labels->empty()) {
                if (labels->size() != 1)
                    throw std::invalid_argument("from_chain_data: label dimensions exceed complex");
                k.cells_[0] = (*labels)[0];
            }
            k.check_labels();
            return k;
        }
        for (Index d = 1; d < boundaries.size(); ++d)
            if (boundaries[d].rows() != boundaries[d - 1].cols())
                throw std::invalid_argument(
                    "from_chain_data: boundary matrices of degrees " + std::to_string(d) +
                    " and " + std::to_string(d + 1) + " do not compose");

        const Index top = boundaries.size();
        std::vector<Index> counts(top + 1);
        counts[0] = boundaries[0].rows();
        for (Index d = 1; d <= top; ++d) counts[d] = boundaries[d - 1].cols();

        for (Index d = 0; d <= top; ++d) {
            std::vector<std::string> names;
            if (labels) {
                if (labels->size() != top + 1)
                    throw std::invalid_argument("from_chain_data: one label list per degree required");
                names = (*labels)[d];
                if (names.size() != counts[d])
                    throw std::invalid_argument("from_chain_data: label count mismatch in degree " +
                                                std::to_string(d));
            } else {
                names.reserve(counts[d]);
                for (Index i = 0; i < counts[d]; ++i) names.push_back(default_label(d, i));
            }
            k.cells_.push_back(std::move(names));
        }
        k.boundaries_ = std::move(boundaries);
        k.check_labels();
        k.check_square_zero();
        return k;
    }

    Index top_dim() const { return cells_.size() - 1; }

    Index cell_count(Index degree) const {
        return degree < cells_.size() ? cells_[degree].size() : 0;
    }

    const std::vector<std::string>& labels(Index degree) const {
        static const std::vector<std::string> none;
        return degree < cells_.size() ? cells_[degree] : none;
    }

    const std::string& label(Index degree, Index index) const {
        if (index >= cell_count(degree))
            throw std::out_of_range("Complex::label: no such cell");
        return cells_[degree][index];
    }

    std::optional<Index> cell_index(Index degree, const std::string& label) const {
        if (degree >= cells_.size()) return std::nullopt;
        const auto it = index_.find({degree, label});
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    CellId cell(Index degree, Index index) const {
        return CellId{degree, index, label(degree, index)};
    }

    // Degree-k boundary matrix. Degree 0 maps to the zero group and degrees
    // above top_dim have no cells, so those come back as zero matrices of
    // the right shape.
    IntMatrix boundary_matrix(Index degree) const {
        if (degree == 0) return IntMatrix(0, cell_count(0));
        if (degree > top_dim()) return IntMatrix(cell_count(degree - 1), 0);
        return boundaries_[degree - 1];
    }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.cells_ == b.cells_ && a.boundaries_ == b.boundaries_;
    }

private:
    Complex() = default;

    static std::string default_label(Index degree, Index index) {
        static const char* prefixes[] = {"v", "e", "f"};
        if (degree < 3) return prefixes[degree] + std::to_string(index);
        return "c" + std::to_string(degree) + "_" + std::to_string(index);
    }

    void check_labels() {
        for (Index d = 0; d < cells_.size(); ++d)
            for (Index i = 0; i < cells_[d].size(); ++i) {
                const auto [it, inserted] = index_.emplace(std::pair{d, cells_[d][i]}, i);
                if (!inserted)
                    throw std::invalid_argument("from_chain_data: duplicate cell label \"" +
                                                cells_[d][i] + "\" in degree " + std::to_string(d));
            }
    }

    void check_square_zero() const {
        for (Index d = 2; d <= top_dim(); ++d) {
            const IntMatrix square = boundaries_[d - 2] * boundaries_[d - 1];
            if (!square.is_zero()) {
                const auto& [key, value] = *square.entries().begin();
                throw std::invalid_argument(
                    "from_chain_data: boundary of boundary is nonzero at cell \"" +
                    cells_[d][key.second] + "\" (degree " + std::to_string(d) + ") over \"" +
                    cells_[d - 2][key.first] + "\"");
            }
        }
    }

    std::vector<std::vector<std::string>> cells_;  // labels per degree
    std::vector<IntMatrix> boundaries_;            // boundaries_[k-1] = degree-k matrix
    std::map<std::pair<Index, std::string>, Index> index_;
};

inline IntMatrix boundary_matrix(const Complex& k, Index degree) {
    return k.boundary_matrix(degree);
}

enum class StandardSpace { circle, torus2_min, klein_min, sphere_cube, torus3_min };

inline std::optional<StandardSpace> parse_standard_space(const std::string& name) {
    if (name == "circle") return StandardSpace::circle;
    if (name == "torus2_min") return StandardSpace::torus2_min;
    if (name == "klein_min") return StandardSpace::klein_min;
    if (name == "sphere_cube") return StandardSpace::sphere_cube;
    if (name == "torus3_min") return StandardSpace::torus3_min;
    return std::nullopt;
}

namespace detail {

inline Complex build_circle(Index m) {
    if (m < 3) throw std::invalid_argument("circle: need at least 3 edges");
    IntMatrix d1(m, m);
    for (Index i = 0; i < m; ++i) {
        d1.set((i + 1) % m, i, 1);
        d1.add(i, i, -1);
    }
    std::vector<std::string> v, e;
    for (Index i = 0; i < m; ++i) {
        v.push_back("v" + std::to_string(i));
        e.push_back("e" + std::to_string(i));
    }
    return Complex::from_chain_data({std::move(d1)}, {{std::move(v), std::move(e)}});
}

inline Complex build_torus2_min() {
    return Complex::from_chain_data({IntMatrix(1, 2), IntMatrix(2, 1)},
                                    {{{"v"}, {"a", "b"}, {"F"}}});
}

inline Complex build_klein_min() {
    IntMatrix d2(2, 1);
    d2.set(1, 0, 2);  // the face closes up along b twice
    return Complex::from_chain_data({IntMatrix(1, 2), std::move(d2)},
                                    {{{"v"}, {"a", "b"}, {"F"}}});
}

inline Complex build_torus3_min() {
    return Complex::from_chain_data(
        {IntMatrix(1, 3), IntMatrix(3, 3), IntMatrix(3, 1)},
        {{{"v"}, {"a", "b", "c"}, {"Fab", "Fbc", "Fca"}, {"T"}}});
}

// Boundary of a solid cube. Vertex i has coordinates (bit0, bit1, bit2);
// each edge e<ab> runs from v<a> to v<b>; the six faces are oriented so that
// their sum is a 2-cycle.
inline Complex build_sphere_cube() {
    const std::vector<std::pair<int, int>> edge_ends = {
        {0, 1}, {2, 3}, {4, 5}, {6, 7},  // x direction
        {0, 2}, {1, 3}, {4, 6}, {5, 7},  // y direction
        {0, 4}, {1, 5}, {2, 6}, {3, 7},  // z direction
    };
    IntMatrix d1(8, 12);
    std::vector<std::string> edge_labels;
    for (Index j = 0; j < edge_ends.size(); ++j) {
        const auto [a, b] = edge_ends[j];
        d1.set(b, j, 1);
        d1.add(a, j, -1);
        edge_labels.push_back("e" + std::to_string(a) + std::to_string(b));
    }

    const std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>> faces = {
        {"fx0", {{"e04", 1}, {"e46", 1}, {"e26", -1}, {"e02", -1}}},
        {"fx1", {{"e13", 1}, {"e37", 1}, {"e57", -1}, {"e15", -1}}},
        {"fy0", {{"e01", 1}, {"e15", 1}, {"e45", -1}, {"e04", -1}}},
        {"fy1", {{"e26", 1}, {"e67", 1}, {"e37", -1}, {"e23", -1}}},
        {"fz0", {{"e02", 1}, {"e23", 1}, {"e13", -1}, {"e01", -1}}},
        {"fz1", {{"e45", 1}, {"e57", 1}, {"e67", -1}, {"e46", -1}}},
    };
    IntMatrix d2(12, 6);
    std::vector<std::string> face_labels;
    for (Index j = 0; j < faces.size(); ++j) {
        face_labels.push_back(faces[j].first);
        for (const auto& [edge, coeff] : faces[j].second) {
            const auto it = std::find(edge_labels.begin(), edge_labels.end(), edge);
            d2.set(static_cast<Index>(it - edge_labels.begin()), j, coeff);
        }
    }

    std::vector<std::string> vertex_labels;
    for (int i = 0; i < 8; ++i) vertex_labels.push_back("v" + std::to_string(i));
    return Complex::from_chain_data(
        {std::move(d1), std::move(d2)},
        {{std::move(vertex_labels), std::move(edge_labels), std::move(face_labels)}});
}

}  // namespace detail

// The standard test spaces. Only circle takes a parameter (its edge count).
inline Complex build_standard(StandardSpace name, std::optional<Index> param = std::nullopt) {
    const auto require_no_param = [&](const char* who) {
        if (param) throw std::invalid_argument(std::string(who) + ": takes no parameter");
    };
    switch (name) {
        case StandardSpace::circle:
            if (!param) throw std::invalid_argument("circle: edge count required");
            return detail::build_circle(*param);
        case StandardSpace::torus2_min:
            require_no_param("torus2_min");
            return detail::build_torus2_min();
        case StandardSpace::klein_min:
            require_no_param("klein_min");
            return detail::build_klein_min();
        case StandardSpace::sphere_cube:
            require_no_param("sphere_cube");
            return detail::build_sphere_cube();
        case StandardSpace::torus3_min:
            require_no_param("torus3_min");
            return detail::build_torus3_min();
    }
    throw std::invalid_argument("build_standard: unknown space");
}

inline Complex build_standard(const std::string& name, std::optional<Index> param = std::nullopt) {
    const auto space = parse_standard_space(name);
    if (!space) throw std::invalid_argument("build_standard: unknown space \"" + name + "\"");
    return build_standard(*space, param);
}

}  // namespace chainft
