#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chainft/complex.hpp"

namespace chainft {

// Integer chain on a fixed complex: a finite formal sum of cells of one
// degree. Coefficients are sparse; absent cells carry zero. Holds a
// reference to its complex — the complex must outlive the chain.
class Chain {
public:
    Chain(const Complex& complex, Index degree) : complex_(&complex), degree_(degree) {}

    static Chain from_vector(const Complex& complex, Index degree, const IntVector& values) {
        if (values.size() != complex.cell_count(degree))
            throw std::invalid_argument("Chain::from_vector: wrong number of coefficients");
        Chain c(complex, degree);
        for (Index i = 0; i < values.size(); ++i)
            if (values[i] != 0) c.coeffs_.emplace(i, values[i]);
        return c;
    }

    static Chain single(const Complex& complex, Index degree, const std::string& label,
                        Int coeff = 1) {
        Chain c(complex, degree);
        c.set(label, std::move(coeff));
        return c;
    }

    const Complex& complex() const { return *complex_; }
    Index degree() const { return degree_; }
    const std::map<Index, Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Int coefficient(Index cell) const {
        const auto it = coeffs_.find(cell);
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    Int coefficient(const std::string& label) const { return coefficient(resolve(label)); }

    void set(Index cell, Int value) {
        if (cell >= complex_->cell_count(degree_))
            throw std::invalid_argument("Chain: no cell with index " + std::to_string(cell) +
                                        " in degree " + std::to_string(degree_));
        if (value == 0)
            coeffs_.erase(cell);
        else
            coeffs_.insert_or_assign(cell, std::move(value));
    }

    void set(const std::string& label, Int value) { set(resolve(label), std::move(value)); }

    void add(Index cell, const Int& value) { set(cell, coefficient(cell) + value); }

    IntVector to_vector() const {
        IntVector v(complex_->cell_count(degree_), Int(0));
        for (const auto& [cell, coeff] : coeffs_) v[cell] = coeff;
        return v;
    }

    Chain operator-() const {
        Chain c(*complex_, degree_);
        for (const auto& [cell, coeff] : coeffs_) c.coeffs_.emplace(cell, -coeff);
        return c;
    }

    Chain& operator+=(const Chain& other) {
        require_compatible(other);
        for (const auto& [cell, coeff] : other.coeffs_) add(cell, coeff);
        return *this;
    }

    Chain& operator-=(const Chain& other) {
        require_compatible(other);
        for (const auto& [cell, coeff] : other.coeffs_) add(cell, -coeff);
        return *this;
    }

    Chain& operator*=(const Int& scalar) {
        if (scalar == 0) {
            coeffs_.clear();
        } else {
            for (auto& [cell, coeff] : coeffs_) coeff *= scalar;
        }
        return *this;
    }

    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(const Int& scalar, Chain c) { return c *= scalar; }

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_ &&
               (a.complex_ == b.complex_ || *a.complex_ == *b.complex_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Chain& c) {
        if (c.coeffs_.empty()) return os << "0";
        bool first = true;
        for (const auto& [cell, coeff] : c.coeffs_) {
            if (!first) os << (coeff > 0 ? " + " : " - ");
            else if (coeff < 0)
                os << "-";
            const Int a = abs(coeff);
            if (a != 1) os << a << "*";
            os << c.complex_->label(c.degree_, cell);
            first = false;
        }
        return os;
    }

private:
    Index resolve(const std::string& label) const {
        const auto idx = complex_->cell_index(degree_, label);
        if (!idx)
            throw std::invalid_argument("Chain: no cell labeled \"" + label + "\" in degree " +
                                        std::to_string(degree_));
        return *idx;
    }

    void require_compatible(const Chain& other) const {
        if (degree_ != other.degree_ || (complex_ != other.complex_ && !(*complex_ == *other.complex_)))
            throw std::invalid_argument("Chain: operands live on different complexes or degrees");
    }

    const Complex* complex_;
    Index degree_;
    std::map<Index, Int> coeffs_;
};

inline Chain boundary(const Chain& sigma) {
    if (sigma.degree() == 0)
        throw std::invalid_argument("boundary: 0-chains have no boundary");
    const IntMatrix d = sigma.complex().boundary_matrix(sigma.degree());
    return Chain::from_vector(sigma.complex(), sigma.degree() - 1, d.apply(sigma.to_vector()));
}

inline bool is_cycle(const Chain& sigma) {
    if (sigma.degree() == 0) return true;
    return boundary(sigma).is_zero();
}

// A chain whose boundary is sigma, when sigma bounds over the integers.
inline std::optional<Chain> bounding_chain(const Chain& sigma) {
    if (!is_cycle(sigma)) throw std::invalid_argument("bounding_chain: input is not a cycle");
    const auto x = solve(sigma.complex().boundary_matrix(sigma.degree() + 1), sigma.to_vector());
    if (!x) return std::nullopt;
    return Chain::from_vector(sigma.complex(), sigma.degree() + 1, *x);
}

// Composition in the chain category: a morphism from gamma to gamma2 is a
// chain with boundary -gamma + gamma2, and composition is chain addition.
inline Chain morphism_compose(const Chain& sigma1, const Chain& sigma2, const Chain& gamma,
                              const Chain& gamma2, const Chain& gamma3) {
    if (boundary(sigma1) != gamma2 - gamma)
        throw std::invalid_argument(
            "morphism_compose: first chain is not a morphism from the given source to the middle cycle");
    if (boundary(sigma2) != gamma3 - gamma2)
        throw std::invalid_argument(
            "morphism_compose: second chain is not a morphism from the middle cycle to the given target");
    return sigma1 + sigma2;
}

using HomologyClass = QuotientClass;

// H_k of the complex, with an adapted cycle basis. Wraps the quotient
// ker(d_k) / im(d_{k+1}); the adapted basis data feeds the character and
// field-theory constructions downstream.
class HomologyStructure {
public:
    HomologyStructure(const Complex& complex, Index degree)
        : complex_(&complex),
          degree_(degree),
          quotient_(complex.boundary_matrix(degree), complex.boundary_matrix(degree + 1)) {}

    const Complex& complex() const { return *complex_; }
    Index degree() const { return degree_; }
    Index betti() const { return quotient_.betti(); }
    const std::vector<Int>& torsion() const { return quotient_.torsion(); }
    const LatticeQuotient& quotient() const { return quotient_; }

    // a basis of the cycle group Z_k
    std::vector<Chain> cycle_basis() const {
        std::vector<Chain> basis;
        for (const IntVector& z : quotient_.kernel().basis())
            basis.push_back(Chain::from_vector(*complex_, degree_, z));
        return basis;
    }

    // matrix sending cycle-basis coordinates to adapted coordinates, in
    // which the class is read off directly
    IntMatrix class_map() const {
        const Index n = quotient_.kernel().dimension();
        IntMatrix m(n, n);
        for (Index j = 0; j < n; ++j) {
            IntVector e(n, Int(0));
            e[j] = 1;
            const IntVector column = quotient_.to_adapted(e);
            for (Index i = 0; i < n; ++i) m.set(i, j, column[i]);
        }
        return m;
    }

    HomologyClass class_of(const Chain& cycle) const {
        if (cycle.degree() != degree_ || !(cycle.complex() == *complex_))
            throw std::invalid_argument("HomologyStructure: chain belongs to a different group");
        const auto coords = quotient_.kernel().coordinates(cycle.to_vector());
        if (!coords) throw std::invalid_argument("HomologyStructure: chain is not a cycle");
        return quotient_.class_of(*coords);
    }

private:
    const Complex* complex_;
    Index degree_;
    LatticeQuotient quotient_;
};

inline HomologyStructure homology(const Complex& complex, Index degree) {
    return HomologyStructure(complex, degree);
}

inline HomologyClass homology_class(const Chain& sigma) {
    return homology(sigma.complex(), sigma.degree()).class_of(sigma);
}

// A morphism between two cycles when they are homologous, else absent.
inline std::optional<Chain> homologous(const Chain& gamma, const Chain& gamma2) {
    if (gamma.degree() != gamma2.degree() || !(gamma.complex() == gamma2.complex()))
        throw std::invalid_argument("homologous: cycles live in different groups");
    if (!is_cycle(gamma) || !is_cycle(gamma2))
        throw std::invalid_argument("homologous: both chains must be cycles");
    return bounding_chain(gamma2 - gamma);
}

// H^k(K; Z) from the transposed boundary matrices, plus a decision procedure
// for integer cocycles.
class CohomologyStructure {
public:
    struct CoboundaryTest {
        std::optional<IntVector> witness;  // (k-1)-cochain w with (d^T)w = u
        QuotientClass class_coords;        // the class of u; zero iff witness present
    };

    CohomologyStructure(const Complex& complex, Index degree)
        : complex_(&complex),
          degree_(degree),
          quotient_(complex.boundary_matrix(degree + 1).transposed(),
                    complex.boundary_matrix(degree).transposed()) {}

    const Complex& complex() const { return *complex_; }
    Index degree() const { return degree_; }
    Index betti() const { return quotient_.betti(); }
    const std::vector<Int>& torsion() const { return quotient_.torsion(); }
    const LatticeQuotient& quotient() const { return quotient_; }

    CoboundaryTest coboundary_test(const IntVector& u) const {
        const auto coords = quotient_.kernel().coordinates(u);
        if (!coords) throw std::invalid_argument("coboundary_test: input is not a cocycle");
        CoboundaryTest out;
        out.witness = solve(complex_->boundary_matrix(degree_).transposed(), u);
        out.class_coords = quotient_.class_of(*coords);
        return out;
    }

private:
    const Complex* complex_;
    Index degree_;
    LatticeQuotient quotient_;
};

inline CohomologyStructure cohomology_integer(const Complex& complex, Index degree) {
    return CohomologyStructure(complex, degree);
}

}  // namespace chainft
