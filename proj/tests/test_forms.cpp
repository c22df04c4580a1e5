#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "chainft/forms.hpp"
#include "support/generators.hpp"

using namespace chainft;
using testsupport::Rng;

TEST_CASE("phase arithmetic stays in [0,1)") {
    REQUIRE(Phase(Rat(5, 4)).value() == Rat(1, 4));
    REQUIRE(Phase(Rat(-1, 4)).value() == Rat(3, 4));
    REQUIRE(Phase(Rat(7)).value() == 0);
    REQUIRE(Phase().is_zero());

    const Phase a(Rat(2, 3)), b(Rat(1, 2));
    REQUIRE((a + b).value() == Rat(1, 6));
    REQUIRE((a - b).value() == Rat(1, 6));
    REQUIRE((-a).value() == Rat(1, 3));
    REQUIRE((a + (-a)).is_zero());
    REQUIRE((Int(3) * a).is_zero());
    REQUIRE((Int(-2) * b).is_zero());
    REQUIRE(Int(2) * a == Phase(Rat(1, 3)));

    std::ostringstream os;
    os << a << " " << Phase();
    REQUIRE(os.str() == "2/3 0");
}

TEST_CASE("cochain values and arithmetic") {
    const Complex k = build_standard(StandardSpace::klein_min);
    RationalCochain w(k, 1);
    REQUIRE(w.is_zero());
    w.set("a", Rat(1, 5));
    w.set("b", Rat(1, 3));
    REQUIRE(w.value("a") == Rat(1, 5));
    REQUIRE(w.value(1) == Rat(1, 3));

    RationalCochain u(k, 1);
    u.set("a", Rat(-1, 5));
    REQUIRE((w + u).value("a") == 0);
    REQUIRE((w - w).is_zero());
    REQUIRE((Rat(3) * w).value("b") == 1);
    REQUIRE(-w == Rat(-1) * w);

    w.set("a", Rat(0));
    REQUIRE(w.values().size() == 1);  // zero values are dropped from storage

    REQUIRE_THROWS_AS(w.set("F", Rat(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(w.set(2, Rat(1)), std::invalid_argument);
    const Complex torus = build_standard(StandardSpace::torus2_min);
    REQUIRE_THROWS_AS(w += RationalCochain(torus, 1), std::invalid_argument);
}

TEST_CASE("coboundary on the standard spaces") {
    const Complex circle = build_standard(StandardSpace::circle, 4);
    RationalCochain w(circle, 1);
    for (Index i = 0; i < 4; ++i) w.set(i, Rat(1, 8));
    REQUIRE(coboundary(w).is_zero());  // no 2-cells
    REQUIRE(coboundary(w).degree() == 2);

    const Complex klein = build_standard(StandardSpace::klein_min);
    RationalCochain theta(klein, 1);
    theta.set("b", Rat(1, 3));
    const RationalCochain dtheta = coboundary(theta);
    REQUIRE(dtheta.value("F") == Rat(2, 3));

    REQUIRE(coboundary(RationalCochain(klein, 1)).is_zero());

    // vertex cochains on the circle: (df)(e_i) = f(head) - f(tail)
    RationalCochain f(circle, 0);
    f.set("v0", Rat(1, 2));
    const RationalCochain df = coboundary(f);
    REQUIRE(df.value("e0") == Rat(-1, 2));  // e0 runs from v0 to v1
    REQUIRE(df.value("e3") == Rat(1, 2));   // e3 runs from v3 to v0
    REQUIRE(df.value("e1") == 0);
}

TEST_CASE("integration pairing") {
    const Complex circle = build_standard(StandardSpace::circle, 4);
    RationalCochain w(circle, 1);
    for (Index i = 0; i < 4; ++i) w.set(i, Rat(1, 8));
    Chain loop(circle, 1);
    for (Index i = 0; i < 4; ++i) loop.set(i, 1);

    REQUIRE(integrate(w, Chain(circle, 1)) == 0);
    REQUIRE(integrate(w, loop) == Rat(1, 2));
    REQUIRE(integrate(w, Int(2) * loop) == 1);

    const Complex sphere = build_standard(StandardSpace::sphere_cube);
    RationalCochain c(sphere, 2);
    Chain faces(sphere, 2);
    for (Index i = 0; i < 6; ++i) {
        c.set(i, Rat(1, 6));
        faces.set(i, 1);
    }
    REQUIRE(integrate(c, faces) == 1);

    REQUIRE_THROWS_AS(integrate(w, Chain(circle, 0)), std::invalid_argument);

    // bilinearity on random pairs
    Rng rng(53);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree) {
            const RationalCochain u = testsupport::random_cochain(rng, k, degree);
            const RationalCochain v = testsupport::random_cochain(rng, k, degree);
            const Chain s = testsupport::random_chain(rng, k, degree);
            const Chain t = testsupport::random_chain(rng, k, degree);
            REQUIRE(integrate(u + v, s) == integrate(u, s) + integrate(v, s));
            REQUIRE(integrate(u, s + t) == integrate(u, s) + integrate(u, t));
            REQUIRE(integrate(Rat(3, 2) * u, s) == Rat(3, 2) * integrate(u, s));
        }
}

TEST_CASE("discrete Stokes identity on random pairs") {
    Rng rng(59);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree < k.top_dim(); ++degree)
            for (int trial = 0; trial < 50; ++trial) {
                const RationalCochain w = testsupport::random_cochain(rng, k, degree);
                const Chain beta = testsupport::random_chain(rng, k, degree + 1);
                REQUIRE(integrate(coboundary(w), beta) == integrate(w, boundary(beta)));
            }
}

TEST_CASE("closedness and integer periods") {
    const Complex circle = build_standard(StandardSpace::circle, 4);
    REQUIRE(is_closed(RationalCochain(circle, 1)));
    REQUIRE(integer_periods(RationalCochain(circle, 1)));

    RationalCochain w(circle, 1);
    for (Index i = 0; i < 4; ++i) w.set(i, Rat(1, 8));
    REQUIRE(is_closed(w));
    REQUIRE_FALSE(integer_periods(w));  // period 1/2 on the fundamental cycle

    RationalCochain u(circle, 1);
    for (Index i = 0; i < 4; ++i) u.set(i, Rat(1, 4));
    REQUIRE(integer_periods(u));  // period 1

    // a non-closed cochain on the klein bottle
    const Complex klein = build_standard(StandardSpace::klein_min);
    RationalCochain theta(klein, 1);
    theta.set("b", Rat(1, 3));
    REQUIRE_FALSE(is_closed(theta));
    REQUIRE_FALSE(integer_periods(theta));
}

TEST_CASE("cycle basis spans cycles in every degree") {
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (const Chain& z : cycle_basis(k, degree)) REQUIRE(is_cycle(z));
    REQUIRE(cycle_basis(build_standard(StandardSpace::circle, 4), 1).size() == 1);
    REQUIRE(cycle_basis(build_standard(StandardSpace::klein_min), 1).size() == 2);
}

TEST_CASE("exponential pairing and its kernel") {
    const Complex circle = build_standard(StandardSpace::circle, 4);
    RationalCochain w(circle, 1);
    for (Index i = 0; i < 4; ++i) w.set(i, Rat(1, 8));
    Chain loop(circle, 1);
    for (Index i = 0; i < 4; ++i) loop.set(i, 1);

    REQUIRE(exp_pairing(w, loop) == Phase(Rat(1, 2)));
    REQUIRE(exp_pairing(w, Int(2) * loop).is_zero());
    REQUIRE(exp_pairing(w, Chain(circle, 1)).is_zero());

    // the pairing kills a cochain on every cell iff all its values are integers
    Rng rng(61);
    for (const Complex& k : testsupport::standard_complexes())
        for (Index degree = 0; degree <= k.top_dim(); ++degree)
            for (int trial = 0; trial < 10; ++trial) {
                const RationalCochain u = testsupport::random_cochain(rng, k, degree);
                bool all_integer = true;
                for (const auto& [cell, v] : u.values())
                    if (!is_integer(v)) all_integer = false;
                bool kills_all = true;
                for (Index cell = 0; cell < k.cell_count(degree); ++cell)
                    if (!exp_pairing(u, Chain::single(k, degree, k.label(degree, cell))).is_zero())
                        kills_all = false;
                REQUIRE(all_integer == kills_all);
            }
}
