// Exact polynomial arithmetic: ordering, truncated products, composition,
// differentiation and evaluation.
#include <doctest.h>

#include <random>

#include "ldg/poly5.hpp"

using namespace ldg;

namespace {

Poly5 random_poly(std::mt19937& rng, int max_degree, int terms) {
    std::uniform_int_distribution<int> expo(0, max_degree);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Poly5 p;
    for (int t = 0; t < terms; ++t) {
        Exponents m{};
        int budget = max_degree;
        for (int i = 0; i < 5; ++i) {
            m[i] = std::min(expo(rng), budget);
            budget -= m[i];
        }
        p.add_term(m, Rational(num(rng), den(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("construction and basic arithmetic") {
    Poly5 x1 = Poly5::variable(0), x2 = Poly5::variable(1);
    Poly5 p = x1 * x1 + Rational(3) * x2;
    CHECK(p.coeff({2, 0, 0, 0, 0}) == 1);
    CHECK(p.coeff({0, 1, 0, 0, 0}) == 3);
    CHECK(p.degree() == 2);
    CHECK(p.min_degree() == 1);
    CHECK((p - p).is_zero());
    CHECK_THROWS_AS(Poly5::variable(5), std::out_of_range);
}

TEST_CASE("graded-lex term ordering") {
    Poly5 p = Poly5::variable(4) + Poly5::variable(0) * Poly5::variable(0) +
              Poly5::variable(0) * Poly5::variable(1) + Poly5::constant(7);
    std::vector<Exponents> seen;
    for (const auto& [m, c] : p.terms()) seen.push_back(m);
    // degree ascending; within a degree x1 dominates
    CHECK(seen == std::vector<Exponents>{{0, 0, 0, 0, 0},
                                         {0, 0, 0, 0, 1},
                                         {2, 0, 0, 0, 0},
                                         {1, 1, 0, 0, 0}});
}

TEST_CASE("truncated product agrees with truncation of the full product") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Poly5 a = random_poly(rng, 5, 8);
        Poly5 b = random_poly(rng, 5, 8);
        for (int n : {0, 2, 4, 6, 8}) {
            CHECK(mul_trunc(a, b, n) == (a * b).truncate(n));
        }
    }
}

TEST_CASE("pow_trunc and grading") {
    Poly5 s = Poly5::variable(0) + Poly5::variable(1);
    Poly5 s3 = pow_trunc(s, 3, -1);
    CHECK(s3.coeff({2, 1, 0, 0, 0}) == 3);
    CHECK(s3.grading(3) == s3);
    CHECK(s3.grading(2).is_zero());
    CHECK(pow_trunc(s, 3, 2).is_zero());
}

TEST_CASE("differentiation and evaluation") {
    std::mt19937 rng(7);
    Poly5 p = random_poly(rng, 4, 10);
    std::array<Rational, 5> x{Rational(1, 2), Rational(-1, 3), 2, 0, Rational(3, 4)};
    // exact rational evaluation agrees with double evaluation
    std::array<double, 5> xd;
    for (int i = 0; i < 5; ++i) xd[i] = to_double(x[i]);
    CHECK(std::abs(to_double(p.evaluate(x)) - p.evaluate(xd)) < 1e-12);
    // gradient vs central differences
    double h = 1e-6;
    for (int i = 0; i < 5; ++i) {
        std::array<double, 5> xp = xd, xm = xd;
        xp[i] += h;
        xm[i] -= h;
        double fd = (p.evaluate(xp) - p.evaluate(xm)) / (2 * h);
        CHECK(std::abs(p.diff(i).evaluate(xd) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("composition with a near-identity shift") {
    // p = x1^2 shifted by h1 = x1^2: (x1 + x1^2)^2 = x1^2 + 2 x1^3 + ...
    Poly5 p = Poly5::variable(0) * Poly5::variable(0);
    PolyVec5 h;
    h[0] = Poly5::variable(0) * Poly5::variable(0);
    Poly5 r = compose_shift(p, h, 3);
    CHECK(r.coeff({2, 0, 0, 0, 0}) == 1);
    CHECK(r.coeff({3, 0, 0, 0, 0}) == 2);
    CHECK(r.degree() == 3);
    // a degree-1 shift component is rejected
    PolyVec5 bad;
    bad[1] = Poly5::variable(0);
    CHECK_THROWS_AS(compose_shift(p, bad, 3), std::invalid_argument);
}

TEST_CASE("signed permutation substitution") {
    Poly5 p = Poly5::variable(0) * Poly5::variable(1);  // x1 x2
    Poly5 q = p.substitute_signed_permutation({3, 1, 2, 0, 4}, {1, -1, 1, 1, 1});
    CHECK(q.coeff({0, 1, 0, 1, 0}) == -1);
    CHECK(q.term_count() == 1);
}

TEST_CASE("rational helpers") {
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(format_rational(Rational(-3, 2)) == "-3/2");
    CHECK(format_rational(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    Rational big(Integer("123456789123456789123456789123456789"),
                 Integer("987654321987654321987654321987654322"));
    Rational lim = limit_denominator(big, 6);
    CHECK(denominator(lim) <= 1000000);
    CHECK(std::abs(to_double(lim) - to_double(big)) < 1e-6);
}
