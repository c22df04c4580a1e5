#include <catch2/catch_amalgamated.hpp>

#include "chainft/characters.hpp"
#include "support/generators.hpp"

using namespace chainft;
using testsupport::Rng;

namespace {

// coordinate-wise sum of two classes in the same group
QuotientClass add_classes(const QuotientClass& a, const QuotientClass& b,
                          const std::vector<Int>& torsion) {
    QuotientClass out;
    for (Index i = 0; i < a.free_part.size(); ++i)
        out.free_part.push_back(a.free_part[i] + b.free_part[i]);
    for (Index i = 0; i < a.torsion_part.size(); ++i)
        out.torsion_part.push_back(mod_positive(a.torsion_part[i] + b.torsion_part[i], torsion[i]));
    return out;
}

Chain fundamental_loop(const Complex& circle) {
    Chain loop(circle, 1);
    for (Index i = 0; i < circle.cell_count(1); ++i) loop.set(i, 1);
    return loop;
}

}  // namespace

TEST_CASE("character construction checks its shape") {
    const Complex klein = build_standard(StandardSpace::klein_min);
    REQUIRE_THROWS_AS(
        DifferentialCharacter(klein, 1, {Phase()}, RationalCochain(klein, 2)),
        std::invalid_argument);  // two basis cycles in degree 1
    REQUIRE_THROWS_AS(
        DifferentialCharacter(klein, 1, {Phase(), Phase()}, RationalCochain(klein, 1)),
        std::invalid_argument);  // curvature degree must be 2

    const DifferentialCharacter f = trivial_character(klein, 1);
    REQUIRE(f.basis_phases().size() == 2);
    REQUIRE(f.curvature().is_zero());
    REQUIRE(validate(f).empty());
}

TEST_CASE("evaluate solves for cycle coordinates") {
    const Complex circle = build_standard(StandardSpace::circle, 4);
    RationalCochain w(circle, 1);
    for (Index i = 0; i < 4; ++i) w.set(i, Rat(1, 8));
    const DifferentialCharacter f = character_from_form(w);
    const Chain loop = fundamental_loop(circle);

    REQUIRE(evaluate(f, Chain(circle, 1)).is_zero());
    REQUIRE(evaluate(f, loop) == Phase(Rat(1, 2)));
    REQUIRE(evaluate(f, -loop) == Phase(Rat(1, 2)));  // -1/2 = 1/2 mod 1
    REQUIRE(evaluate(f, -loop) == -evaluate(f, loop));
    REQUIRE(evaluate(f, Int(2) * loop).is_zero());

    REQUIRE_THROWS_AS(evaluate(f, Chain::single(circle, 1, "e0")), std::invalid_argument);
    REQUIRE_THROWS_AS(evaluate(f, Chain(circle, 0)), std::invalid_argument);

    // additivity on random cycles
    Rng rng(67);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree) {
            const DifferentialCharacter g = testsupport::random_character(rng, k, degree);
            for (int trial = 0; trial < 10; ++trial) {
                const Chain x = testsupport::random_cycle(rng, k, degree);
                const Chain y = testsupport::random_cycle(rng, k, degree);
                REQUIRE(evaluate(g, x + y) == evaluate(g, x) + evaluate(g, y));
            }
        }
}

TEST_CASE("validate reports the defining relation's failures") {
    const Complex klein = build_standard(StandardSpace::klein_min);
    // cycle basis in degree 1 is (a, b)
    const DifferentialCharacter bad(klein, 1, {Phase(), Phase(Rat(1, 3))},
                                    RationalCochain(klein, 2));
    const auto violations = validate(bad);
    REQUIRE(violations.size() == 1);
    REQUIRE(violations[0].kind == Violation::Kind::smoothness);
    REQUIRE_THAT(violations[0].detail, Catch::Matchers::ContainsSubstring("F"));

    const DifferentialCharacter good(klein, 1, {Phase(), Phase(Rat(1, 2))},
                                     RationalCochain(klein, 2));
    REQUIRE(validate(good).empty());

    // non-closed curvature and non-integer periods are caught
    const Complex t3 = build_standard(StandardSpace::torus3_min);
    RationalCochain c(t3, 2);
    c.set("Fab", Rat(1, 2));
    const DifferentialCharacter f(
        t3, 1, std::vector<Phase>(DifferentialCharacter::cycle_basis_size(t3, 1)), c);
    const auto issues = validate(f);
    bool period_issue = false;
    for (const auto& v : issues)
        if (v.kind == Violation::Kind::curvature_period_not_integer) period_issue = true;
    REQUIRE(period_issue);

    // a degree-0 character on the klein bottle whose curvature 1-cochain is
    // not closed: d(curvature)(F) = curvature(2b) = 2/3
    RationalCochain open_form(klein, 1);
    open_form.set("b", Rat(1, 3));
    const DifferentialCharacter g(
        klein, 0, std::vector<Phase>(DifferentialCharacter::cycle_basis_size(klein, 0)), open_form);
    bool closed_issue = false;
    for (const auto& v : validate(g))
        if (v.kind == Violation::Kind::curvature_not_closed) closed_issue = true;
    REQUIRE(closed_issue);
}

TEST_CASE("character_from_form satisfies every invariant") {
    const Complex klein = build_standard(StandardSpace::klein_min);
    RationalCochain w(klein, 1);
    w.set("a", Rat(1, 5));
    w.set("b", Rat(1, 3));
    const DifferentialCharacter f = character_from_form(w);
    REQUIRE(f.curvature().value("F") == Rat(2, 3));
    REQUIRE(validate(f).empty());
    REQUIRE(evaluate(f, Chain::single(klein, 1, "a")) == Phase(Rat(1, 5)));

    REQUIRE(character_from_form(RationalCochain(klein, 1)) == trivial_character(klein, 1));

    Rng rng(71);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (int trial = 0; trial < 10; ++trial) {
                const RationalCochain u = testsupport::random_cochain(rng, k, degree);
                REQUIRE(validate(character_from_form(u)).empty());
            }
}

TEST_CASE("random characters are valid in every admissible degree") {
    Rng rng(73);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (int trial = 0; trial < 10; ++trial) {
                REQUIRE(validate(testsupport::random_character(rng, k, degree)).empty());
                REQUIRE(validate(testsupport::random_character(rng, k, degree, true)).empty());
            }
}

TEST_CASE("characters form a group") {
    Rng rng(79);
    for (const Complex& k : testsupport::standard_complexes()) {
        const Index degree = k.top_dim() >= 1 ? 1 : 0;
        const DifferentialCharacter f = testsupport::random_character(rng, k, degree);
        const DifferentialCharacter g = testsupport::random_character(rng, k, degree);
        const DifferentialCharacter h = testsupport::random_character(rng, k, degree);

        REQUIRE(char_add(f, g) == char_add(g, f));
        REQUIRE(char_add(char_add(f, g), h) == char_add(f, char_add(g, h)));
        REQUIRE(char_add(f, trivial_character(k, degree)) == f);
        REQUIRE(char_add(f, char_negate(f)) == trivial_character(k, degree));
        REQUIRE(char_add(f, g).curvature() == f.curvature() + g.curvature());
        REQUIRE(validate(char_add(f, g)).empty());
    }
    const Complex klein = build_standard(StandardSpace::klein_min);
    const Complex circle = build_standard(StandardSpace::circle, 4);
    REQUIRE_THROWS_AS(char_add(trivial_character(klein, 1), trivial_character(klein, 0)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(char_add(trivial_character(klein, 1), trivial_character(circle, 1)),
                      std::invalid_argument);
}

TEST_CASE("character_from_form is a homomorphism") {
    Rng rng(83);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (int trial = 0; trial < 5; ++trial) {
                const RationalCochain u = testsupport::random_cochain(rng, k, degree);
                const RationalCochain v = testsupport::random_cochain(rng, k, degree);
                REQUIRE(char_add(character_from_form(u), character_from_form(v)) ==
                        character_from_form(u + v));
            }
}

TEST_CASE("flat characters kill boundaries") {
    Rng rng(89);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (int trial = 0; trial < 5; ++trial) {
                const DifferentialCharacter f = testsupport::random_character(rng, k, degree, true);
                for (Index cell = 0; cell < k.cell_count(degree + 1); ++cell) {
                    const Chain beta = Chain::single(k, degree + 1, k.label(degree + 1, cell));
                    REQUIRE(evaluate(f, boundary(beta)).is_zero());
                }
            }
}

TEST_CASE("character lifts restrict to the character on cycles") {
    Rng rng(97);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (int trial = 0; trial < 5; ++trial) {
                const DifferentialCharacter f = testsupport::random_character(rng, k, degree);
                const IntMatrix mix = testsupport::random_kernel_mix(rng, k, degree);
                for (const auto* mix_ptr : {static_cast<const IntMatrix*>(nullptr), &mix}) {
                    const std::vector<Phase> lift = character_lift(f, mix_ptr);
                    const Chain z = testsupport::random_cycle(rng, k, degree);
                    Phase total;
                    for (const auto& [cell, coeff] : z.coeffs()) total += coeff * lift[cell];
                    REQUIRE(total == evaluate(f, z));
                }
            }
}

TEST_CASE("characteristic class of a form character vanishes") {
    Rng rng(101);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (int trial = 0; trial < 5; ++trial) {
                const RationalCochain w = testsupport::random_cochain(rng, k, degree);
                REQUIRE(characteristic_class(character_from_form(w)).is_zero());
            }
}

TEST_CASE("characteristic class detects the curvature's integral twist") {
    // total curvature 1/6 per face integrates to 1 over the cube surface;
    // the resulting character has a generating class
    const Complex sphere = build_standard(StandardSpace::sphere_cube);
    RationalCochain c(sphere, 2);
    for (Index i = 0; i < 6; ++i) c.set(i, Rat(1, 6));

    // every 1-cycle bounds, so the phases are pinned by the curvature
    const HomologyStructure h1 = homology(sphere, 1);
    const LatticeQuotient& q = h1.quotient();
    const Index dim = q.kernel().dimension();
    REQUIRE(q.relation_rank() == dim);  // no free positions
    std::vector<Phase> on_adapted(dim);
    for (Index j = 0; j < dim; ++j) {
        Rat integral = 0;
        const IntVector& pre = q.preimages()[j];
        for (Index cell = 0; cell < pre.size(); ++cell)
            if (pre[cell] != 0) integral += Rat(pre[cell]) * c.value(cell);
        on_adapted[j] = Phase(integral / q.invariants()[j]);
    }
    std::vector<Phase> basis_phases(dim);
    for (Index i = 0; i < dim; ++i) {
        IntVector unit(dim, Int(0));
        unit[i] = 1;
        const IntVector adapted = q.to_adapted(unit);
        Phase p;
        for (Index j = 0; j < dim; ++j) p += adapted[j] * on_adapted[j];
        basis_phases[i] = p;
    }
    const DifferentialCharacter f(sphere, 1, std::move(basis_phases), c);
    REQUIRE(validate(f).empty());

    const QuotientClass cls = characteristic_class(f);
    REQUIRE(cls.torsion_part.empty());
    REQUIRE(cls.free_part.size() == 1);
    REQUIRE(abs(cls.free_part[0]) == 1);  // a generator of Z
}

TEST_CASE("characteristic class sees torsion from flat holonomy") {
    const Complex klein = build_standard(StandardSpace::klein_min);
    const DifferentialCharacter f(klein, 1, {Phase(), Phase(Rat(1, 2))},
                                  RationalCochain(klein, 2));
    REQUIRE(validate(f).empty());
    const QuotientClass cls = characteristic_class(f);
    REQUIRE(cls.free_part.empty());
    REQUIRE(cls.torsion_part == IntVector{Int(1)});  // the order-2 class

    // order-1 holonomy gives the zero class
    REQUIRE(characteristic_class(trivial_character(klein, 1)).is_zero());
}

TEST_CASE("characteristic class is additive and lift-independent") {
    Rng rng(103);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree) {
            const auto torsion = cohomology_integer(k, degree + 1).torsion();
            for (int trial = 0; trial < 5; ++trial) {
                const DifferentialCharacter f = testsupport::random_character(rng, k, degree);
                const DifferentialCharacter g = testsupport::random_character(rng, k, degree);
                REQUIRE(characteristic_class(char_add(f, g)) ==
                        add_classes(characteristic_class(f), characteristic_class(g), torsion));

                const IntMatrix mix = testsupport::random_kernel_mix(rng, k, degree);
                REQUIRE(characteristic_class(f, &mix) == characteristic_class(f));
            }
        }
}

TEST_CASE("characteristic class rejects invalid characters") {
    const Complex klein = build_standard(StandardSpace::klein_min);
    const DifferentialCharacter bad(klein, 1, {Phase(), Phase(Rat(1, 3))},
                                    RationalCochain(klein, 2));
    REQUIRE_THROWS_AS(characteristic_class(bad), std::invalid_argument);
}
