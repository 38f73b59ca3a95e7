// Potential construction, exact T-basis decomposition, q-omega rewriting and
// the large-field convexity check.
#include <doctest.h>

#include <random>

#include "ldg/landau.hpp"

using namespace ldg;

TEST_CASE("basis bookkeeping") {
    CHECK(tbasis_names()[0] == "T2");
    CHECK(tbasis_names()[8] == "T2^4");
    CHECK(tbasis_degree(0) == 2);
    CHECK(tbasis_degree(5) == 6);   // T3^2
    CHECK(tbasis_degree(8) == 8);   // T2^4
    CHECK(tbasis()[2] == invariant_t2() * invariant_t2());
}

TEST_CASE("build/decompose round trip at random rational coefficients") {
    std::mt19937 rng(314159);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int trial = 0; trial < 10; ++trial) {
        LdGCoefficients c;
        for (int i = 0; i < kTBasisSize; ++i) c[i] = Rational(num(rng), den(rng));
        Poly5 p = build_potential(c, 8);
        DecomposeResult d = decompose_invariant(p);
        CHECK(d.invariant);
        for (int i = 0; i < kTBasisSize; ++i) CHECK(d.expansion[i] == c[i]);
    }
}

TEST_CASE("decomposition rejects non-invariants and bad degrees") {
    Poly5 x1sq = Poly5::variable(0) * Poly5::variable(0);
    DecomposeResult d = decompose_invariant(x1sq);
    CHECK_FALSE(d.invariant);
    CHECK_FALSE(d.residual.is_zero());
    CHECK_THROWS_AS(decompose_invariant(Poly5::variable(0)), std::invalid_argument);
    Poly5 deg9 = pow_trunc(invariant_t3(), 3, -1);
    CHECK_THROWS_AS(decompose_invariant(deg9), std::invalid_argument);
}

TEST_CASE("order-6 build rejects eighth-order coefficients") {
    LdGCoefficients c;
    c[0] = 1;
    c[6] = 1;
    CHECK_THROWS_AS(build_potential(c, 6), std::invalid_argument);
}

TEST_CASE("q-omega form of T2^3 + T3^2") {
    InvariantExpansion e;
    e[4] = 1;  // T2^3
    e[5] = 1;  // T3^2
    auto terms = qomega_form(e);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].q_power == 6);
    CHECK(terms[0].omega_power == 0);
    CHECK(terms[0].coefficient == 1);
    CHECK(terms[1].q_power == 6);
    CHECK(terms[1].omega_power == 2);
    CHECK(terms[1].coefficient == Rational(1, 6));
    // numeric agreement with the direct polynomial at a point with T3 > 0
    std::array<double, 5> x{-1, 0, 0, -1, 0};  // T2 = 3, T3 = 2
    OrbitPoint p = orbit_geometry(x);
    double direct = expansion_polynomial(e).evaluate(x);
    CHECK(qomega_evaluate(terms, p.q, p.omega_paper) == doctest::Approx(direct));
}

TEST_CASE("convexity of the leading form") {
    InvariantExpansion cube;
    cube[4] = 1;  // T2^3 alone: positive definite at large fields
    CHECK(convexity_check(cube).convex);

    InvariantExpansion mixed;
    mixed[4] = 1;
    mixed[5] = 1;  // T2^3 + T3^2 -> (1 + (1-omega)^2/6) q^6
    CHECK(convexity_check(mixed).convex);

    InvariantExpansion tilted;
    tilted[4] = 1;
    tilted[5] = -7;  // 1 - 7(1-omega)^2/6 < 0 near omega = 0
    ConvexityResult r = convexity_check(tilted);
    CHECK_FALSE(r.convex);
    CHECK(r.witness_omega == doctest::Approx(0.0));

    InvariantExpansion squares_only;
    squares_only[5] = 1;  // T3^2 vanishes on the omega = 1 ray
    CHECK_FALSE(convexity_check(squares_only).convex);
}
