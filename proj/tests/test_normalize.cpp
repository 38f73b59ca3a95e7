// Reduction engine: closed-form transformations, the order-by-order oracle,
// the singular-regime root handling and full substitution verification.
#include <doctest.h>

#include <random>

#include "ldg/normalize.hpp"

using namespace ldg;

namespace {

Rational rr(std::mt19937& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    int n = num(rng);
    while (nonzero && n == 0) n = num(rng);
    return Rational(n, den(rng));
}

}  // namespace

TEST_CASE("shift pushes T2 onto 9*k1*T3 at third order") {
    // grad T2 . F2 = 9 T3, so T2(x + k1 F2) = T2 + 9 k1 T3 + O(4)
    TransformCoefficients ks;
    ks[0] = Rational(2, 5);
    LdGCoefficients c;
    c[0] = Rational(7, 3);
    InvariantExpansion e = apply_transform_expansion(c, ks, 6, 3);
    CHECK(e[0] == c[0]);
    CHECK(e[1] == Rational(9) * ks[0] * c[0]);
}

TEST_CASE("order-6 regular reduction on the reference record") {
    LdGCoefficients c;
    c[0] = 1;
    c[1] = 9;
    ReductionReport rep = reduce_regular_order6(c);
    CHECK(rep.verified);
    CHECK(rep.reduced.form == ReducedForm::LANDRED6);
    CHECK(rep.ks[0] == -1);
    CHECK(rep.ks[1] == Rational(15, 2));
    CHECK(rep.reduced.surviving[0] == 1);
    CHECK(rep.reduced.surviving[4] == 1);
    for (int i : {1, 2, 3, 5, 6, 7, 8}) CHECK(rep.reduced.surviving[i] == 0);
}

TEST_CASE("order-6 reduction is k4-independent in its surviving pattern") {
    std::mt19937 rng(99);
    LdGCoefficients c;
    c[0] = rr(rng, true);
    for (int i = 1; i < 6; ++i) c[i] = rr(rng);
    for (const Rational& k4 : {Rational(0), Rational(3, 7), Rational(-2)}) {
        ReductionReport rep = reduce_regular_order6(c, k4);
        CHECK(rep.verified);
        CHECK(rep.reduced.surviving[0] == c[0]);
        CHECK(rep.reduced.surviving[4] == 1);
        CHECK(rep.ks[3] == k4);
    }
}

TEST_CASE("regular path refuses transition-point records") {
    LdGCoefficients c;
    c[1] = 1;
    CHECK_THROWS_AS(reduce_regular_order6(c), std::domain_error);
    CHECK_THROWS_AS(reduce_regular_order8(c), std::domain_error);
}

TEST_CASE("order-8 full and xi_only reductions verify; oracle agrees") {
    std::mt19937 rng(2024);
    LdGCoefficients c;
    c[0] = rr(rng, true);
    c[1] = rr(rng, true);
    for (int i = 2; i < 9; ++i) c[i] = rr(rng);

    ReductionReport full = reduce_regular_order8(c);
    CHECK(full.verified);
    CHECK(full.reduced.form == ReducedForm::LANDRED8A);
    CHECK(full.reduced.surviving[0] == c[0]);
    CHECK(full.reduced.surviving[8] == 1);
    for (int i : {1, 2, 3, 4, 5, 6, 7}) CHECK(full.reduced.surviving[i] == 0);

    ReductionReport xi = reduce_regular_order8(c, 0, RegularMode::xi_only);
    CHECK(xi.verified);
    CHECK(xi.reduced.form == ReducedForm::LANDRED8B);
    CHECK(xi.reduced.surviving[8] == 1);
    CHECK(xi.reduced.surviving[7] == regular_coefficients_order8(c, 0, RegularMode::xi_only).eta);

    // the oracle re-derives the full transformation with a consistency probe
    TransformCoefficients seed;
    TransformCoefficients oracle =
        oracle_solve(c, 8, oracle_stages_regular(8, RegularMode::full), seed, true);
    for (int i = 0; i < 11; ++i) CHECK(oracle[i] == full.ks[i]);
}

TEST_CASE("validity radius estimate") {
    TransformCoefficients ks;
    CHECK(validity_estimate(ks) == std::numeric_limits<double>::infinity());
    ks[0] = -1;  // degree-2 generator: radius |k|^(-1/1)
    CHECK(validity_estimate(ks) == doctest::Approx(1.0));
    ks[1] = 8;  // degree-3 generator: radius 8^(-1/2)
    CHECK(validity_estimate(ks) == doctest::Approx(std::pow(8.0, -0.5)));
}

TEST_CASE("singular order-6 cases hit their target patterns at c1 = 0") {
    std::mt19937 rng(5);
    LdGCoefficients c;
    c[1] = rr(rng, true);
    for (int i = 2; i < 6; ++i) c[i] = rr(rng);
    for (char cs : {'a', 'b', 'c'}) {
        ReductionReport rep = reduce_singular_order6(c, cs);
        CHECK(rep.verified);
        CHECK(rep.reduced.surviving[3] == 0);
        CHECK(rep.reduced.surviving[4] == (cs == 'a' ? 0 : 1));
        CHECK(rep.reduced.surviving[5] == (cs == 'b' ? 0 : 1));
        SingularOrder6 s = singular_coefficients_order6(c, cs);
        CHECK(s.gamma2 == c[1]);
    }
    CHECK_THROWS_AS(singular_coefficients_order6(c, 'd'), std::invalid_argument);
    LdGCoefficients bad;
    CHECK_THROWS_AS(singular_coefficients_order6(bad, 'a'), std::domain_error);
}

TEST_CASE("singular order-6 with small c1: targets exact, gamma4 residual tiny") {
    std::mt19937 rng(17);
    LdGCoefficients c;
    c[0] = Rational(1, 1000);
    c[1] = rr(rng, true);
    for (int i = 2; i < 6; ++i) c[i] = rr(rng);
    ReductionReport rep = reduce_singular_order6(c, 'c');
    CHECK(rep.reduced.surviving[4] == 1);
    CHECK(rep.reduced.surviving[5] == 1);
    CHECK(std::abs(to_double(rep.residual[3])) < 1e-40);
}

TEST_CASE("exact and series k2 agree in the switchover band") {
    std::mt19937 rng(23);
    LdGCoefficients c;
    c[1] = Rational(2);
    for (int i = 2; i < 6; ++i) c[i] = rr(rng);
    for (const Rational& t : {Rational(1, 10000), Rational(2, 10000), Rational(3, 10000)}) {
        c[0] = t * c[1] * c[1];  // |c1/c2^2| just above the 1e-4 switchover
        SingularOrder6 exact = singular_coefficients_order6(c, 'a');
        SingularOrder6 series = singular_coefficients_order6(c, 'a', true);
        double ke = to_double(exact.ks[1]), kser = to_double(series.ks[1]);
        CHECK(std::abs(ke - kser) <= 1e-6 * std::max(1.0, std::abs(ke)));
    }
}

TEST_CASE("singular order-8 leading coefficients at c1 = 0") {
    std::mt19937 rng(31);
    LdGCoefficients c;
    c[1] = rr(rng, true);
    for (int i = 2; i < 9; ++i) c[i] = rr(rng);
    for (char cs : {'a', 'b'}) {
        ReductionReport rep = reduce_singular_order8(c, cs);
        CHECK(rep.verified);
        CHECK(rep.reduced.surviving[3] == 0);
        CHECK(rep.reduced.surviving[6] == 0);
        if (cs == 'a') {
            CHECK(rep.reduced.surviving[7] == 1);
            CHECK(rep.reduced.surviving[8] == 0);
            CHECK(rep.ks[2] == -c[5] / (3 * c[1]));
        } else {
            CHECK(rep.reduced.surviving[7] == 0);
            CHECK(rep.reduced.surviving[8] == 1);
            CHECK(rep.ks[1] == -c[3] / (3 * c[1]));
        }
    }
    CHECK_THROWS_AS(singular_coefficients_order8(c, 'c'), std::invalid_argument);
}

TEST_CASE("regime resolution threshold") {
    LdGCoefficients c;
    c[0] = Rational(1, 2);
    c[1] = 1;
    CHECK(resolve_regime(c) == Regime::regular);
    c[0] = Rational(1, 100000);
    CHECK(resolve_regime(c) == Regime::singular);
    c[0] = 0;
    CHECK(resolve_regime(c) == Regime::singular);
    CHECK(singular_series_regime(Rational(1, 100000), Rational(1)));
    CHECK_FALSE(singular_series_regime(Rational(1, 100), Rational(1)));
}
