// Representation data: commutators, invariants, covariant catalog, Molien
// counting, orbit geometry, discrete symmetries and orbit-space structures.
#include <doctest.h>

#include "ldg/so3.hpp"

using namespace ldg;

TEST_CASE("generator commutators close cyclically in both representations") {
    const auto& g = generators();
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        CHECK(commutator(g.so3[a], g.so3[b]) == g.so3[c]);
        CHECK(commutator(g.adjoint[a], g.adjoint[b]) == g.adjoint[c]);
    }
}

TEST_CASE("invariant values and trace identities") {
    std::array<Rational, 5> x{1, 0, 0, 1, 0};
    CHECK(invariant_t2().evaluate(x) == 3);
    CHECK(invariant_t3().evaluate(x) == -2);
    // Tr Q^2 = 2 T2 and Tr Q^3 = 3 T3 as polynomial identities
    std::array<Poly5, 5> xv;
    for (int i = 0; i < 5; ++i) xv[i] = Poly5::variable(i);
    std::array<std::array<Poly5, 3>, 3> q{
        {{xv[0], xv[1], xv[2]}, {xv[1], xv[3], xv[4]}, {xv[2], xv[4], Poly5() - xv[0] - xv[3]}}};
    Poly5 tr2, tr3;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            tr2 += q[i][j] * q[j][i];
            for (int k = 0; k < 3; ++k) tr3 += q[i][j] * q[j][k] * q[k][i];
        }
    CHECK(tr2 == Rational(2) * invariant_t2());
    CHECK(tr3 == Rational(3) * invariant_t3());
}

TEST_CASE("order-parameter matrix round trip") {
    std::array<Rational, 5> x{Rational(1, 2), -1, 2, Rational(-1, 3), Rational(2, 7)};
    CHECK(qmatrix_inverse(qmatrix(x)) == x);
    auto bad = qmatrix(x);
    bad[0][1] += 1;  // break symmetry
    CHECK_THROWS_AS(qmatrix_inverse(bad), std::invalid_argument);
}

TEST_CASE("invariants are annihilated by every generator field") {
    for (int a = 1; a <= 3; ++a) {
        CHECK(lie_derivative(invariant_t2(), a).is_zero());
        CHECK(lie_derivative(invariant_t3(), a).is_zero());
    }
}

TEST_CASE("all 15 catalog covariants pass the exact covariance identity") {
    const auto& cat = covariant_catalog();
    REQUIRE(cat.size() == 15);
    for (const auto& c : cat) CHECK(check_covariance(c.field).covariant);
    // degree census: one each at 1,2,3; two at 4,5,6; three at 7,8
    std::map<int, int> census;
    for (const auto& c : cat) census[c.degree]++;
    CHECK(census == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}, {4, 2},
                                       {5, 2}, {6, 2}, {7, 3}, {8, 3}});
    // F1 is the identity field
    for (int i = 0; i < 5; ++i) CHECK(covariant("F1").field[i] == Poly5::variable(i));
    CHECK_THROWS_AS(covariant("F9"), std::invalid_argument);
}

TEST_CASE("Molien series and independent rank counts") {
    auto inv = molien_series(MolienTarget::invariants, 8);
    auto cov = molien_series(MolienTarget::covariants, 8);
    CHECK(inv == std::vector<long>{1, 0, 1, 1, 1, 1, 2, 1, 2});
    CHECK(cov == std::vector<long>{0, 1, 1, 1, 2, 2, 2, 3, 3});
    for (int d = 1; d <= 8; ++d) {
        CHECK(independent_count(d, MolienTarget::invariants) == inv[d]);
        CHECK(independent_count(d, MolienTarget::covariants) == cov[d]);
    }
}

TEST_CASE("orbit geometry and the two omega conventions") {
    OrbitPoint p = orbit_geometry({1, 0, 0, 1, 0});
    CHECK(p.t2 == doctest::Approx(3.0));
    CHECK(p.t3 == doctest::Approx(-2.0));
    CHECK(p.omega_paper == doctest::Approx(1.0 - 2.0 * std::sqrt(2.0) / 3.0));
    CHECK(p.omega_trace == doctest::Approx(0.0));
    CHECK(orbit_geometry({0, 0, 0, 0, 0}).isotropic);
}

TEST_CASE("isotropy identity holds only in the trace convention") {
    bool explicit_all_zero = true;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
            CHECK(isotropy_residual(a, b, NormConvention::trace) == 0);
            if (isotropy_residual(a, b, NormConvention::explicit_form) != 0)
                explicit_all_zero = false;
        }
    CHECK_FALSE(explicit_all_zero);
}

TEST_CASE("discrete symmetries and gradient tangency") {
    CHECK(discrete_symmetry_check());
}

TEST_CASE("orbit-space metric and Gram identity") {
    auto m = orbit_space_metric();
    CHECK(m[0][0] == Rational(4, 3));
    CHECK(m[0][3] == Rational(-2, 3));
    CHECK(m[1][1] == 1);
    for (const auto& r : pi_gram_residual()) CHECK(r.is_zero());
    auto pi = pi_matrix<Rational>(2, 3);
    CHECK(pi[0][0] == 8);
    CHECK(pi[0][1] == 18);
    CHECK(pi[1][1] == Rational(16, 3));
}

TEST_CASE("homological operator eigenvalues") {
    CHECK(homological_eigenvalue(1, Rational(1)) == 4);
    CHECK(homological_eigenvalue(2, Rational(-3, 2)) == -12);
    CHECK(homological_eigenvalue(0, Rational(5)) == 0);
}
