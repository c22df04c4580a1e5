#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "chainft/forms.hpp"

namespace chainft {

// One failed invariant, as data. Validation returns all of them rather than
// stopping at the first.
struct Violation {
    enum class Kind { curvature_not_closed, curvature_period_not_integer, smoothness };
    Kind kind;
    std::string detail;

    friend std::ostream& operator<<(std::ostream& os, const Violation& v) { return os << v.detail; }
};

// A differential character of degree n+1: a homomorphism from the cycle
// group Z_{n+1} to U(1), recorded by its phases on the deterministic cycle
// basis, together with a curvature cochain of degree n+2. The defining
// compatibility (the value on a boundary equals the exponentiated curvature
// integral) is a checkable invariant, not an assumption: see validate.
class DifferentialCharacter {
public:
    DifferentialCharacter(const Complex& complex, Index degree, std::vector<Phase> basis_phases,
                          RationalCochain curvature)
        : complex_(&complex),
          degree_(degree),
          basis_phases_(std::move(basis_phases)),
          curvature_(std::move(curvature)) {
        if (!(curvature_.complex() == complex) || curvature_.degree() != degree + 1)
            throw std::invalid_argument(
                "DifferentialCharacter: curvature must live one degree up on the same complex");
        const Index expected = cycle_basis_size(complex, degree);
        if (basis_phases_.size() != expected)
            throw std::invalid_argument("DifferentialCharacter: expected " +
                                        std::to_string(expected) + " basis phases, got " +
                                        std::to_string(basis_phases_.size()));
    }

    const Complex& complex() const { return *complex_; }
    Index degree() const { return degree_; }
    const std::vector<Phase>& basis_phases() const { return basis_phases_; }
    const RationalCochain& curvature() const { return curvature_; }

    static Index cycle_basis_size(const Complex& complex, Index degree) {
        return KernelLattice(complex.boundary_matrix(degree)).dimension();
    }

    friend bool operator==(const DifferentialCharacter& a, const DifferentialCharacter& b) {
        return a.degree_ == b.degree_ && a.basis_phases_ == b.basis_phases_ &&
               a.curvature_ == b.curvature_ && (a.complex_ == b.complex_ || *a.complex_ == *b.complex_);
    }

private:
    const Complex* complex_;
    Index degree_;
    std::vector<Phase> basis_phases_;
    RationalCochain curvature_;
};

inline DifferentialCharacter trivial_character(const Complex& complex, Index degree) {
    return DifferentialCharacter(
        complex, degree,
        std::vector<Phase>(DifferentialCharacter::cycle_basis_size(complex, degree)),
        RationalCochain(complex, degree + 1));
}

// Value of the character on a cycle: solve for the cycle's coordinates in
// the basis and combine the basis phases Z-linearly.
inline Phase evaluate(const DifferentialCharacter& f, const Chain& sigma) {
    if (sigma.degree() != f.degree() || !(sigma.complex() == f.complex()))
        throw std::invalid_argument("evaluate: chain degree or complex mismatch");
    const KernelLattice lattice(f.complex().boundary_matrix(f.degree()));
    const auto coords = lattice.coordinates(sigma.to_vector());
    if (!coords) throw std::invalid_argument("evaluate: chain is not a cycle");
    Phase out;
    for (Index i = 0; i < coords->size(); ++i) out += (*coords)[i] * f.basis_phases()[i];
    return out;
}

// All invariant failures: curvature closedness (per cell one degree up),
// integer periods (per basis cycle of the curvature degree), and the
// defining compatibility (per cell of the curvature degree).
inline std::vector<Violation> validate(const DifferentialCharacter& f) {
    std::vector<Violation> out;
    const Complex& k = f.complex();
    const Index n2 = f.degree() + 1;  // curvature degree

    const RationalCochain dc = coboundary(f.curvature());
    for (const auto& [cell, v] : dc.values())
        out.push_back({Violation::Kind::curvature_not_closed,
                       "curvature is not closed: d(curvature) = " + to_fraction_string(v) +
                           " on cell \"" + k.label(n2 + 1, cell) + "\""});

    for (const Chain& z : cycle_basis(k, n2)) {
        const Rat period = integrate(f.curvature(), z);
        if (!is_integer(period)) {
            std::ostringstream os;
            os << "curvature period " << to_fraction_string(period) << " on cycle " << z
               << " is not an integer";
            out.push_back({Violation::Kind::curvature_period_not_integer, os.str()});
        }
    }

    for (Index cell = 0; cell < k.cell_count(n2); ++cell) {
        const Chain beta = Chain::single(k, n2, k.label(n2, cell));
        const Phase lhs = evaluate(f, boundary(beta));
        const Phase rhs = exp_pairing(f.curvature(), beta);
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "value " << lhs << " on the boundary of \"" << k.label(n2, cell)
               << "\" does not match the curvature pairing " << rhs;
            out.push_back({Violation::Kind::smoothness, os.str()});
        }
    }
    return out;
}

inline DifferentialCharacter character_from_form(const RationalCochain& w) {
    std::vector<Phase> phases;
    for (const Chain& z : cycle_basis(w.complex(), w.degree()))
        phases.push_back(exp_pairing(w, z));
    return DifferentialCharacter(w.complex(), w.degree(), std::move(phases), coboundary(w));
}

inline DifferentialCharacter char_add(const DifferentialCharacter& f,
                                      const DifferentialCharacter& g) {
    if (f.degree() != g.degree() || !(f.complex() == g.complex()))
        throw std::invalid_argument("char_add: characters live on different groups");
    std::vector<Phase> phases;
    for (Index i = 0; i < f.basis_phases().size(); ++i)
        phases.push_back(f.basis_phases()[i] + g.basis_phases()[i]);
    return DifferentialCharacter(f.complex(), f.degree(), std::move(phases),
                                 f.curvature() + g.curvature());
}

inline DifferentialCharacter char_negate(const DifferentialCharacter& f) {
    std::vector<Phase> phases;
    for (const Phase& p : f.basis_phases()) phases.push_back(-p);
    return DifferentialCharacter(f.complex(), f.degree(), std::move(phases), -f.curvature());
}

// Extension of the character from cycles to all chains of its degree: one
// phase per cell. The columns of the SNF change of basis split the chain
// group into the cycle part (which must carry f) and a complement (free to
// carry anything; the canonical lift sends it to zero). kernel_mix adds
// integer multiples of the cycle basis into the complement before reading
// the lift off, producing a different but equally valid extension — the
// map's restriction to cycles is unchanged.
inline std::vector<Phase> character_lift(const DifferentialCharacter& f,
                                         const IntMatrix* kernel_mix = nullptr) {
    const Complex& k = f.complex();
    const SnfDecomposition s = snf(k.boundary_matrix(f.degree()));
    const Index cells = k.cell_count(f.degree());
    const Index kernel_dim = cells - s.rank;
    if (kernel_mix &&
        (kernel_mix->rows() != kernel_dim || kernel_mix->cols() != s.rank))
        throw std::invalid_argument("character_lift: kernel_mix must be (cycles x complement)");

    std::vector<Phase> lift(cells);
    for (Index j = 0; j < cells; ++j) {
        Phase p;
        for (Index i = s.rank; i < cells; ++i) {
            Int coeff = s.v_inv.get(i, j);
            if (kernel_mix)
                for (Index t = 0; t < s.rank; ++t)
                    coeff -= kernel_mix->get(i - s.rank, t) * s.v_inv.get(t, j);
            p += coeff * f.basis_phases()[i - s.rank];
        }
        lift[j] = p;
    }
    return lift;
}

// Image of the character in integer cohomology one degree above the
// curvature: pick any lift, take its rational representatives T, and measure
// the failure of T to integrate the curvature: u(cell) = curvature integral
// minus T(boundary of cell). u is an integer cocycle and its class is
// independent of every choice made.
inline QuotientClass characteristic_class(const DifferentialCharacter& f,
                                          const IntMatrix* kernel_mix = nullptr) {
    if (const auto violations = validate(f); !violations.empty())
        throw std::invalid_argument("characteristic_class: invalid character: " +
                                    violations.front().detail);
    const Complex& k = f.complex();
    const Index n2 = f.degree() + 1;
    const std::vector<Phase> lift = character_lift(f, kernel_mix);
    const IntMatrix d = k.boundary_matrix(n2);

    IntVector u(k.cell_count(n2), Int(0));
    for (Index cell = 0; cell < u.size(); ++cell) {
        Rat total = integrate(f.curvature(), Chain::single(k, n2, k.label(n2, cell)));
        for (Index i = 0; i < k.cell_count(f.degree()); ++i) {
            const Int coeff = d.get(i, cell);
            if (coeff != 0) total -= Rat(coeff) * lift[i].value();
        }
        if (!is_integer(total))
            throw std::logic_error("characteristic_class: non-integer defect " +
                                   to_fraction_string(total) + " on cell \"" + k.label(n2, cell) +
                                   "\"");
        u[cell] = numerator(total);
    }
    return cohomology_integer(k, n2).coboundary_test(u).class_coords;
}

}  // namespace chainft
