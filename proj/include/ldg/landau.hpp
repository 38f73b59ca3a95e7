// Construction of invariant potentials from coefficient records and exact
// decomposition on the fixed T-basis [T2, T3, T2^2, T2*T3, T2^3, T3^2,
// T2^2*T3, T2*T3^2, T2^4]; q-omega rewriting and the large-field convexity
// check on the maximal-order part.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/so3.hpp"

namespace ldg {

inline constexpr int kTBasisSize = 9;

inline const std::array<std::string, kTBasisSize>& tbasis_names() {
    static const std::array<std::string, kTBasisSize> names{
        "T2", "T3", "T2^2", "T2*T3", "T2^3", "T3^2", "T2^2*T3", "T2*T3^2", "T2^4"};
    return names;
}

// (a, b) with basis element = T2^a T3^b
inline constexpr std::array<std::pair<int, int>, kTBasisSize> kTBasisPowers{
    {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {3, 0}, {0, 2}, {2, 1}, {1, 2}, {4, 0}}};

inline int tbasis_degree(int i) {
    return 2 * kTBasisPowers[i].first + 3 * kTBasisPowers[i].second;
}

inline const std::array<Poly5, kTBasisSize>& tbasis() {
    static const std::array<Poly5, kTBasisSize> basis = [] {
        const Poly5& t2 = invariant_t2();
        const Poly5& t3 = invariant_t3();
        std::array<Poly5, kTBasisSize> b;
        for (int i = 0; i < kTBasisSize; ++i)
            b[i] = pow_trunc(t2, kTBasisPowers[i].first, -1) *
                   pow_trunc(t3, kTBasisPowers[i].second, -1);
        return b;
    }();
    return basis;
}

struct LdGCoefficients {
    std::array<Rational, kTBasisSize> c{};  // c1..c9 on the T-basis order

    Rational& operator[](int i) { return c[i]; }
    const Rational& operator[](int i) const { return c[i]; }
    bool regular_regime() const { return c[0] != 0; }
    bool singular_regime() const { return c[1] != 0; }
};

struct InvariantExpansion {
    std::array<Rational, kTBasisSize> v{};

    Rational& operator[](int i) { return v[i]; }
    const Rational& operator[](int i) const { return v[i]; }
    bool is_zero() const {
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }
    friend bool operator==(const InvariantExpansion&, const InvariantExpansion&) = default;
};

inline Poly5 expansion_polynomial(const InvariantExpansion& e) {
    Poly5 p;
    for (int i = 0; i < kTBasisSize; ++i)
        if (e[i] != 0) p += e[i] * tbasis()[i];
    return p;
}

inline Poly5 build_potential(const LdGCoefficients& c, int order) {
    if (order != 6 && order != 8) throw std::invalid_argument("order must be 6 or 8");
    if (order == 6 && (c[6] != 0 || c[7] != 0 || c[8] != 0))
        throw std::invalid_argument("order 6 requires c7 = c8 = c9 = 0");
    InvariantExpansion e;
    e.v = c.c;
    return expansion_polynomial(e);
}

struct DecomposeResult {
    bool invariant = false;
    InvariantExpansion expansion;
    Poly5 residual;  // p minus the reconstruction; zero iff invariant
};

// Exact Gaussian elimination against the precomputed basis expansions.
// A nonzero residual means p is not an invariant of degree <= 8.
inline DecomposeResult decompose_invariant(const Poly5& p) {
    if (p.degree() > 8) throw std::invalid_argument("decompose_invariant: degree above 8");
    if (!p.is_zero() && p.min_degree() < 2)
        throw std::invalid_argument("decompose_invariant: constant or linear part present");
    const auto& basis = tbasis();
    std::map<Exponents, std::size_t, GradedLexLess> row_of;
    for (const auto& b : basis)
        for (const auto& [m, c] : b.terms())
            if (!row_of.count(m)) row_of[m] = row_of.size();
    for (const auto& [m, c] : p.terms())
        if (!row_of.count(m)) row_of[m] = row_of.size();
    const std::size_t nrows = row_of.size();
    const std::size_t ncols = kTBasisSize + 1;
    std::vector<std::vector<Rational>> mat(nrows, std::vector<Rational>(ncols, Rational(0)));
    for (int j = 0; j < kTBasisSize; ++j)
        for (const auto& [m, c] : basis[j].terms()) mat[row_of[m]][j] = c;
    for (const auto& [m, c] : p.terms()) mat[row_of[m]][kTBasisSize] = c;

    std::vector<std::pair<std::size_t, int>> pivots;
    std::size_t r = 0;
    for (int col = 0; col < kTBasisSize && r < nrows; ++col) {
        std::size_t piv = r;
        while (piv < nrows && mat[piv][col] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(mat[r], mat[piv]);
        Rational pv = mat[r][col];
        for (std::size_t j = col; j < ncols; ++j) mat[r][j] /= pv;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r || mat[i][col] == 0) continue;
            Rational f = mat[i][col];
            for (std::size_t j = col; j < ncols; ++j) mat[i][j] -= f * mat[r][j];
        }
        pivots.push_back({r, col});
        ++r;
    }
    DecomposeResult out;
    for (const auto& [row, col] : pivots) out.expansion[col] = mat[row][kTBasisSize];
    out.residual = p - expansion_polynomial(out.expansion);
    out.invariant = out.residual.is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// q-omega form: T2 = q^2, T3 = (1-omega) q^3 / sqrt(6). A basis element
// T2^a T3^b becomes q^(2a+3b) (1-omega)^b / 6^(b/2); odd b carries one
// factor of 1/sqrt(6).

struct QOmegaTerm {
    int q_power = 0;
    int omega_power = 0;   // power of (1-omega)
    Rational coefficient;  // rational part; full factor is coefficient / 6^(omega_power/2)
};

inline std::vector<QOmegaTerm> qomega_form(const InvariantExpansion& e) {
    std::vector<QOmegaTerm> out;
    for (int i = 0; i < kTBasisSize; ++i) {
        if (e[i] == 0) continue;
        auto [a, b] = kTBasisPowers[i];
        QOmegaTerm t;
        t.q_power = 2 * a + 3 * b;
        t.omega_power = b;
        t.coefficient = e[i];
        if (b == 2) t.coefficient /= 6;  // exact 6^(b/2) for even b
        out.push_back(t);
    }
    return out;
}

inline double qomega_evaluate(const std::vector<QOmegaTerm>& terms, double q, double omega) {
    double s = 0;
    for (const auto& t : terms) {
        double f = to_double(t.coefficient) * std::pow(q, t.q_power) *
                   std::pow(1.0 - omega, t.omega_power);
        if (t.omega_power % 2 == 1) f /= std::sqrt(6.0);
        s += f;
    }
    return s;
}

struct ConvexityResult {
    bool convex = false;
    double witness_omega = 0;  // minimizing omega when not convex
};

// The maximal-degree part, written via qomega_form, must be strictly
// positive for all q > 0, omega in [0,1].
inline ConvexityResult convexity_check(const InvariantExpansion& e) {
    int lead = -1;
    for (int i = 0; i < kTBasisSize; ++i)
        if (e[i] != 0) lead = std::max(lead, tbasis_degree(i));
    ConvexityResult out;
    if (lead < 0) return out;  // zero polynomial: not convex at large fields
    InvariantExpansion top;
    for (int i = 0; i < kTBasisSize; ++i)
        if (e[i] != 0 && tbasis_degree(i) == lead) top[i] = e[i];
    auto terms = qomega_form(top);
    // at a fixed leading degree the (1-omega) powers occurring are 0,1,2;
    // minimize the resulting quadratic in u = 1-omega over u in [0,1]
    double a0 = 0, a1 = 0, a2 = 0;
    for (const auto& t : terms) {
        double c = to_double(t.coefficient);
        if (t.omega_power == 0) a0 += c;
        else if (t.omega_power == 1) a1 += c / std::sqrt(6.0);
        else a2 += c;
    }
    double best_u = 0, best = a0;
    auto consider = [&](double u) {
        double v = a0 + a1 * u + a2 * u * u;
        if (v < best) { best = v; best_u = u; }
    };
    consider(1.0);
    if (a2 > 0) {
        double u_star = -a1 / (2 * a2);
        if (u_star > 0 && u_star < 1) consider(u_star);
    }
    out.convex = best > 0;
    out.witness_omega = 1.0 - best_u;
    return out;
}

}  // namespace ldg
