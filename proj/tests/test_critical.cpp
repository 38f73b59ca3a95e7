// Critical-point analysis: gradient structure, branches, stability spectra,
// transition series and the numeric minimizer.
#include <doctest.h>

#include "ldg/critical.hpp"

using namespace ldg;

TEST_CASE("critical shell radii") {
    CHECK(*reduced_critical_radius(-3, 6) == doctest::Approx(1.0));
    CHECK(*reduced_critical_radius(-4, 8) == doctest::Approx(1.0));
    CHECK_FALSE(reduced_critical_radius(1, 6).has_value());
    CHECK_THROWS_AS(reduced_critical_radius(-1, 7), std::invalid_argument);
}

TEST_CASE("gradient decomposes exactly on the invariant gradients") {
    for (auto x : {std::array<double, 5>{0.3, -1.2, 0.7, 0.25, -0.6},
                   std::array<double, 5>{1, 0, 0, 1, 0},
                   std::array<double, 5>{-0.5, 0.1, 0.9, 2.0, -1.3}}) {
        GradientDecomposition gd = gradient_decomposition(x, 2.5, -0.5);
        CHECK(gd.residual_norm < 1e-10);
    }
}

TEST_CASE("noncollinear T3-free family") {
    CHECK(noncollinear_solutions(1, 0).eta_zero);
    NoncollinearReport r = noncollinear_solutions(-4, 1);
    CHECK(r.t2 == doctest::Approx(1.0));
    CHECK(r.admissible);
    CHECK_FALSE(noncollinear_solutions(4, 1).admissible);
}

TEST_CASE("collinearity factor at the uniaxial sample point") {
    auto mus = collinearity_mu({1, 0, 0, 0, std::sqrt(2.0)});
    REQUIRE(mus.size() == 1);
    CHECK(mus[0] == doctest::Approx(-1.0));
}

TEST_CASE("branch parametrizations carry the uniaxial orbit data") {
    double om = 1.0 - 2.0 * std::sqrt(2.0) / 3.0;
    BranchSolution a = branch_points('a', 1.0, 0.25);
    CHECK(a.admissible);
    CHECK(a.t2 == doctest::Approx(3.0));
    CHECK(a.t3 == doctest::Approx(-2.0));
    CHECK(a.omega_paper == doctest::Approx(om));
    CHECK(a.omega_trace == doctest::Approx(0.0));
    BranchSolution b = branch_points('b', 0.5, 1.0);
    CHECK(b.admissible);
    CHECK(b.t2 == doctest::Approx(3.0));
    BranchSolution c = branch_points('c', 1.0, 1.0);
    CHECK(c.admissible);
    CHECK(c.t2 == doctest::Approx(12.0));
    CHECK(c.t3 == doctest::Approx(-16.0));
    CHECK(c.omega_paper == doctest::Approx(om));
    BranchSolution d = branch_points('d', 1.0, -1.0);
    CHECK(d.admissible);
    CHECK(d.t2 == doctest::Approx(12.0));
    // all enumerated points really sit on collinearity loci
    for (const auto& sol : {a, b, c, d})
        for (const auto& p : sol.points) CHECK_FALSE(collinearity_mu(p, 1e-9).empty());
    // inadmissible parameters flag instead of throwing
    CHECK_FALSE(branch_points('b', 1.0, 0.1).admissible);
    CHECK_THROWS_AS(branch_points('e', 1, 1), std::invalid_argument);
}

TEST_CASE("branch amplitude zeroes the gradient and obeys the sign window") {
    BranchCriticalValue bc = branch_critical_value(100, -0.5);
    CHECK(bc.exists);
    CHECK(bc.amplitude == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bc.gradient_residual < 1e-10);
    for (double lambda : {1.0, -1.0, 5.0, -5.0})
        for (double eta : {-10.0, -3.0, 0.5, 2.0}) {
            bool expected = (lambda >= 0 && eta > -27.0 / 4.0) || (lambda <= 0 && eta < -27.0 / 4.0);
            CHECK(branch_critical_value(lambda, eta).exists == expected);
        }
    CHECK_THROWS_AS(branch_critical_value(1, -27.0 / 4.0), std::domain_error);
}

TEST_CASE("closed-form spectra match the numeric Hessian") {
    HessianSpectrum sa = branch_stability('a', 1, -1);
    // {0, 0, 18*lambda, -18*eta*lambda/23, -9*eta*lambda/23}
    CHECK(sa.closed_form[4] == doctest::Approx(18.0));
    CHECK(sa.closed_form[3] == doctest::Approx(18.0 / 23.0));
    CHECK(sa.closed_form[2] == doctest::Approx(9.0 / 23.0));
    CHECK(sa.max_rel_err < 1e-8);
    CHECK(sa.zero_count == 2);
    CHECK(sa.stable);
    CHECK_FALSE(branch_stability('a', 1, 1).stable);
    HessianSpectrum sc = branch_stability('c', 100, -0.5);
    CHECK(sc.max_rel_err < 1e-8);
    CHECK(stability_window(1, -1));
    CHECK_FALSE(stability_window(1, 1));
    CHECK_FALSE(stability_window(-1, -1));
    CHECK_FALSE(stability_window(1, -7));
}

TEST_CASE("transition branch series") {
    SeriesSolution s = transition_branch_series(1, 0, 1);
    CHECK(s.z == std::array<Rational, 5>{-1, 0, 0, 1, 0});
    CHECK(s.gradient_order6);
    // symbolic leading orders for generic parameters
    Rational g2(3, 2), g3(2, 5);
    SeriesSolution g = transition_branch_series(g2, g3, 1);
    CHECK(g.z[0] == -1 / g2);
    CHECK(g.z[1] == 6 * g3 / (g2 * g2 * g2));
    CHECK(g.z[2] == -72 * g3 * g3 / (g2 * g2 * g2 * g2 * g2));
    CHECK(g.gradient_order6);
    // the displayed z4/z5 correspond to sextic coefficient 4
    SeriesSolution s4 = transition_branch_series(g2, g3, 4);
    auto ref = transition_series_reference(g2, g3);
    for (int i = 0; i < 5; ++i) CHECK(s4.z[i] == ref[i]);
    // line restriction variant is computed alongside
    CHECK(g.z_line27 == transition_branch_series(g2, g3, 27).z);
    CHECK_THROWS_AS(transition_branch_series(0, 1, 1), std::domain_error);
}

TEST_CASE("transition Hessian expansion and eigenvalue series") {
    Rational g2(2), g3(1, 3);
    TransitionHessian th = transition_branch_hessian(g2, g3);
    CHECK(th.cross_checked);
    CHECK(th.h1[0][3] == 3);
    CHECK(th.h1[1][1] == -6);
    CHECK(th.h2[0][0] == 18 * g3 / (g2 * g2));
    CHECK(th.h2[1][1] == 36 * g3 / (g2 * g2));
    REQUIRE(th.lambda_s.has_value());
    CHECK(*th.lambda_s == g2 * g2 / (6 * g3));  // = 2
    // small-epsilon signs (-,-,+)
    double f = to_double(6 * g3 / (g2 * g2));
    double eps = 1e-2;
    double mu1 = -6 * (1 - f * eps) * eps;
    double mu2 = -3 * (1 - f * eps) * eps;
    double mu3 = 3 * (1 + f * eps) * eps;
    CHECK(mu1 < 0);
    CHECK(mu2 < 0);
    CHECK(mu3 > 0);
    CHECK(th.mu[0].first == -6);
    CHECK(th.mu[2].second == 1);
    CHECK_FALSE(transition_branch_hessian(1, -1).lambda_s.has_value());
}

TEST_CASE("minimizer refuses unbounded potentials and finds the shell") {
    InvariantExpansion bad = reduced_order8_expansion(1, Rational(-13, 2));
    CHECK_THROWS_AS(minimize_classify(bad, 4, 1), std::domain_error);

    auto mins = minimize_classify(reduced_order6_expansion(-3), 20, 2024);
    REQUIRE(!mins.empty());
    for (const auto& m : mins) {
        CHECK(m.t2 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(m.value == doctest::Approx(-2.0).epsilon(1e-8));
    }
}
