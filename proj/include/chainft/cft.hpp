#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainft/characters.hpp"

namespace chainft {

// A chain field theory in trivialized normal form. Every object (cycle) is
// carried by the standard line implicitly; what remains is the phase each
// morphism acts by — a homomorphism on the full chain group of the theory's
// degree, recorded per cell — plus the curvature cochain one degree up. The
// smoothness condition ties the two: on a boundary the phase must equal the
// exponentiated curvature integral.
class ChainFieldTheory {
public:
    ChainFieldTheory(const Complex& complex, Index degree, std::vector<Phase> lift,
                     RationalCochain curvature)
        : complex_(&complex),
          degree_(degree),
          lift_(std::move(lift)),
          curvature_(std::move(curvature)) {
        if (!(curvature_.complex() == complex) || curvature_.degree() != degree + 1)
            throw std::invalid_argument(
                "ChainFieldTheory: curvature must live one degree up on the same complex");
        if (lift_.size() != complex.cell_count(degree))
            throw std::invalid_argument("ChainFieldTheory: one phase per cell required");
    }

    const Complex& complex() const { return *complex_; }
    Index degree() const { return degree_; }
    const std::vector<Phase>& lift() const { return lift_; }
    const RationalCochain& curvature() const { return curvature_; }

    friend bool operator==(const ChainFieldTheory& a, const ChainFieldTheory& b) {
        return a.degree_ == b.degree_ && a.lift_ == b.lift_ && a.curvature_ == b.curvature_ &&
               (a.complex_ == b.complex_ || *a.complex_ == *b.complex_);
    }

private:
    const Complex* complex_;
    Index degree_;
    std::vector<Phase> lift_;  // one per cell of the theory's degree
    RationalCochain curvature_;
};

// The phase a morphism acts by: Z-linear extension of the per-cell phases.
inline Phase apply(const ChainFieldTheory& e, const Chain& sigma) {
    if (sigma.degree() != e.degree() || !(sigma.complex() == e.complex()))
        throw std::invalid_argument("apply: chain degree or complex mismatch");
    Phase out;
    for (const auto& [cell, coeff] : sigma.coeffs()) out += coeff * e.lift()[cell];
    return out;
}

// On a cycle, the scalar the theory assigns to that automorphism.
inline Phase holonomy(const ChainFieldTheory& e, const Chain& sigma) {
    if (!is_cycle(sigma)) throw std::invalid_argument("holonomy: chain is not a cycle");
    return apply(e, sigma);
}

inline std::vector<Violation> validate(const ChainFieldTheory& e) {
    std::vector<Violation> out;
    const Complex& k = e.complex();
    const Index n2 = e.degree() + 1;

    const RationalCochain dc = coboundary(e.curvature());
    for (const auto& [cell, v] : dc.values())
        out.push_back({Violation::Kind::curvature_not_closed,
                       "curvature is not closed: d(curvature) = " + to_fraction_string(v) +
                           " on cell \"" + k.label(n2 + 1, cell) + "\""});

    for (const Chain& z : cycle_basis(k, n2)) {
        const Rat period = integrate(e.curvature(), z);
        if (!is_integer(period)) {
            std::ostringstream os;
            os << "curvature period " << to_fraction_string(period) << " on cycle " << z
               << " is not an integer";
            out.push_back({Violation::Kind::curvature_period_not_integer, os.str()});
        }
    }

    for (Index cell = 0; cell < k.cell_count(n2); ++cell) {
        const Chain beta = Chain::single(k, n2, k.label(n2, cell));
        const Phase lhs = apply(e, boundary(beta));
        const Phase rhs = exp_pairing(e.curvature(), beta);
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "phase " << lhs << " on the boundary of \"" << k.label(n2, cell)
               << "\" does not match the curvature pairing " << rhs;
            out.push_back({Violation::Kind::smoothness, os.str()});
        }
    }
    return out;
}

// Theory of a rational cochain: each cell's phase is the cochain's value
// mod 1, the curvature is the coboundary. Smoothness is the Stokes identity.
inline ChainFieldTheory cft_from_form(const RationalCochain& w) {
    std::vector<Phase> lift;
    lift.reserve(w.complex().cell_count(w.degree()));
    for (Index cell = 0; cell < w.complex().cell_count(w.degree()); ++cell)
        lift.push_back(Phase(w.value(cell)));
    return ChainFieldTheory(w.complex(), w.degree(), std::move(lift), coboundary(w));
}

// Theory of a character: extend the character from cycles to all chains via
// the SNF splitting and keep its curvature. Different kernel_mix choices
// give different lifts of the same character; all of them are isomorphic.
inline ChainFieldTheory cft_from_character(const DifferentialCharacter& f,
                                           const IntMatrix* kernel_mix = nullptr) {
    if (const auto violations = validate(f); !violations.empty())
        throw std::invalid_argument("cft_from_character: invalid character: " +
                                    violations.front().detail);
    return ChainFieldTheory(f.complex(), f.degree(), character_lift(f, kernel_mix),
                            f.curvature());
}

// Holonomy on the cycle basis packages the theory's restriction to cycles
// as a differential character.
inline DifferentialCharacter holonomy_character(const ChainFieldTheory& e) {
    std::vector<Phase> phases;
    for (const Chain& z : cycle_basis(e.complex(), e.degree()))
        phases.push_back(holonomy(e, z));
    return DifferentialCharacter(e.complex(), e.degree(), std::move(phases), e.curvature());
}

inline ChainFieldTheory star(const ChainFieldTheory& e, const ChainFieldTheory& f) {
    if (e.degree() != f.degree() || !(e.complex() == f.complex()))
        throw std::invalid_argument("star: theories live on different complexes or degrees");
    std::vector<Phase> lift;
    for (Index i = 0; i < e.lift().size(); ++i) lift.push_back(e.lift()[i] + f.lift()[i]);
    return ChainFieldTheory(e.complex(), e.degree(), std::move(lift),
                            e.curvature() + f.curvature());
}

inline ChainFieldTheory invert(const ChainFieldTheory& e) {
    std::vector<Phase> lift;
    for (const Phase& p : e.lift()) lift.push_back(-p);
    return ChainFieldTheory(e.complex(), e.degree(), std::move(lift), -e.curvature());
}

inline ChainFieldTheory trivial_theory(const Complex& complex, Index degree) {
    return ChainFieldTheory(complex, degree, std::vector<Phase>(complex.cell_count(degree)),
                            RationalCochain(complex, degree + 1));
}

inline bool is_flat(const ChainFieldTheory& e) { return e.curvature().is_zero(); }

// Deformation invariance: the theory assigns equal phases to chains that
// differ by a boundary, i.e. the lift kills every boundary cell-by-cell.
// Strictly weaker than flatness here: it holds exactly when the curvature
// is integer-valued on every cell.
inline bool is_deformation_invariant(const ChainFieldTheory& e) {
    const Complex& k = e.complex();
    const Index n2 = e.degree() + 1;
    for (Index cell = 0; cell < k.cell_count(n2); ++cell) {
        const Chain beta = Chain::single(k, n2, k.label(n2, cell));
        if (!apply(e, boundary(beta)).is_zero()) return false;
    }
    return true;
}

// Natural transformation data between two theories: a homomorphism on the
// cycle group one degree down, recorded on its basis. The defining property
// is h(boundary of sigma) = lift_F(sigma) - lift_E(sigma) per cell sigma.
struct IsoWitness {
    std::vector<Phase> phases;  // one per basis cycle one degree down
};

// Decide isomorphism and produce the witness. Two theories are isomorphic
// exactly when their curvatures coincide and their holonomy characters
// agree; then the lift difference g vanishes on cycles, so it factors
// through the boundary group one degree down, and dividing through the
// adapted-basis invariants extends it to a homomorphism h on the whole
// cycle group there (possible because phases divide: U(1) is divisible).
inline std::optional<IsoWitness> isomorphism_witness(const ChainFieldTheory& e,
                                                     const ChainFieldTheory& f) {
    if (e.degree() != f.degree() || !(e.complex() == f.complex()))
        throw std::invalid_argument("isomorphism_witness: theories live on different complexes or degrees");
    if (!(e.curvature() == f.curvature())) return std::nullopt;
    const Complex& k = e.complex();
    const Index degree = e.degree();

    for (const Chain& z : cycle_basis(k, degree))
        if (!(holonomy(e, z) == holonomy(f, z))) return std::nullopt;

    // g = lift difference; zero on all cycles from here on
    std::vector<Phase> g;
    for (Index i = 0; i < e.lift().size(); ++i) g.push_back(f.lift()[i] - e.lift()[i]);

    if (degree == 0) {
        // every 0-chain is a cycle, so g is already identically zero
        return IsoWitness{};
    }

    // boundary group inside the cycle group one degree down
    const HomologyStructure h_below = homology(k, degree - 1);
    const LatticeQuotient& q = h_below.quotient();

    // h on the adapted basis: h(w_j) = g(p_j) / d_j where the preimage p_j
    // has boundary d_j * w_j; free positions take zero
    std::vector<Phase> h_adapted(q.kernel().dimension());
    for (Index j = 0; j < q.relation_rank(); ++j) {
        Phase g_pre;
        const IntVector& p = q.preimages()[j];
        for (Index cell = 0; cell < p.size(); ++cell) g_pre += p[cell] * g[cell];
        h_adapted[j] = Phase(g_pre.value() / q.invariants()[j]);
    }

    // transfer to the cycle basis: z_i = sum_j U[j][i] w_j
    IsoWitness witness;
    const Index dim = q.kernel().dimension();
    for (Index i = 0; i < dim; ++i) {
        IntVector unit(dim, Int(0));
        unit[i] = 1;
        const IntVector adapted = q.to_adapted(unit);
        Phase p;
        for (Index j = 0; j < dim; ++j) p += adapted[j] * h_adapted[j];
        witness.phases.push_back(p);
    }

    // verify the defining identity on every cell before returning
    const IntMatrix d = k.boundary_matrix(degree);
    for (Index cell = 0; cell < k.cell_count(degree); ++cell) {
        const Chain sigma = Chain::single(k, degree, k.label(degree, cell));
        const auto coords = q.kernel().coordinates(d.apply(sigma.to_vector()));
        if (!coords) throw std::logic_error("isomorphism_witness: boundary is not a cycle");
        Phase h_value;
        for (Index i = 0; i < coords->size(); ++i) h_value += (*coords)[i] * witness.phases[i];
        if (!(h_value == g[cell]))
            throw std::logic_error("isomorphism_witness: witness failed verification on cell \"" +
                                   k.label(degree, cell) + "\"");
    }
    return witness;
}

// The group of flat theories of one degree up to isomorphism, read off the
// homology one degree up: one circle factor per betti number, one cyclic
// factor per torsion coefficient, with explicit flat generator theories.
// Circle factors are continuous, so their generators carry a sample phase.
struct FlatClassification {
    Index object_degree = 0;  // theories live one degree up
    Index betti = 0;
    std::vector<Int> torsion;
    std::vector<ChainFieldTheory> torsion_generators;  // holonomy 1/d on its factor
    std::vector<ChainFieldTheory> free_generators;     // sample holonomy on its factor

    static constexpr const char* sample_phase = "1/3";

    std::string group_symbol() const {
        std::string s;
        for (Index i = 0; i < betti; ++i) s += (s.empty() ? "" : " x ") + std::string("U(1)");
        for (const Int& d : torsion) s += (s.empty() ? "Z/" : " x Z/") + d.str();
        return s.empty() ? "trivial" : s;
    }
};

inline FlatClassification classify_flat(const Complex& complex, Index n) {
    const HomologyStructure h = homology(complex, n + 1);
    const LatticeQuotient& q = h.quotient();
    FlatClassification out;
    out.object_degree = n;
    out.betti = h.betti();
    out.torsion = h.torsion();

    // a flat character whose value on adapted basis vector `position` is
    // `phase` and zero on the others; well-defined because the phase's
    // order divides the invariant there
    const auto generator = [&](Index position, const Phase& phase) {
        const Index dim = q.kernel().dimension();
        std::vector<Phase> basis_phases(dim);
        for (Index i = 0; i < dim; ++i) {
            IntVector unit(dim, Int(0));
            unit[i] = 1;
            basis_phases[i] = q.to_adapted(unit)[position] * phase;
        }
        const DifferentialCharacter f(complex, n + 1, std::move(basis_phases),
                                      RationalCochain(complex, n + 2));
        return cft_from_character(f);
    };

    for (Index j = 0; j < q.relation_rank(); ++j)
        if (q.invariants()[j] > 1)
            out.torsion_generators.push_back(generator(j, Phase(Rat(1) / q.invariants()[j])));
    for (Index j = 0; j < out.betti; ++j)
        out.free_generators.push_back(
            generator(q.relation_rank() + j, Phase(parse_fraction(FlatClassification::sample_phase))));
    return out;
}

}  // namespace chainft
