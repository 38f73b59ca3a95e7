// The adjoint representation of SO(3) on symmetric traceless 3x3 matrices:
// generators in both the 3x3 and the 5x5 (coordinate) pictures, the basic
// invariants T2/T3, the covariant catalog through degree 8, covariance and
// invariance checks, Molien counting with an independent rank cross-check,
// orbit geometry (q, omega in both normalization conventions), and the
// orbit-space structures (metric, Pi-matrix, homological operator).
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/poly5.hpp"

namespace ldg {

using Mat3i = std::array<std::array<int, 3>, 3>;
using Mat5i = std::array<std::array<int, 5>, 5>;

struct GeneratorSet {
    std::array<Mat3i, 3> so3;      // L1, L2, L3
    std::array<Mat5i, 3> adjoint;  // J1, J2, J3
};

inline const GeneratorSet& generators() {
    static const GeneratorSet g = [] {
        GeneratorSet s{};
        s.so3[0] = Mat3i{{{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}};
        s.so3[1] = Mat3i{{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}};
        s.so3[2] = Mat3i{{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}};
        s.adjoint[0] = Mat5i{{{0, 0, 0, 0, 0},
                              {0, 0, -1, 0, 0},
                              {0, 1, 0, 0, 0},
                              {0, 0, 0, 0, -2},
                              {1, 0, 0, 2, 0}}};
        s.adjoint[1] = Mat5i{{{0, 0, 2, 0, 0},
                              {0, 0, 0, 0, 1},
                              {-2, 0, 0, -1, 0},
                              {0, 0, 0, 0, 0},
                              {0, -1, 0, 0, 0}}};
        s.adjoint[2] = Mat5i{{{0, -2, 0, 0, 0},
                              {1, 0, 0, -1, 0},
                              {0, 0, 0, 0, -1},
                              {0, 2, 0, 0, 0},
                              {0, 0, 1, 0, 0}}};
        return s;
    }();
    return g;
}

template <class M>
inline M commutator(const M& a, const M& b) {
    M r{};
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int s = 0;
            for (std::size_t k = 0; k < n; ++k)
                s += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            r[i][j] = s;
        }
    return r;
}

// ---------------------------------------------------------------------------
// Invariants

inline const Poly5& invariant_t2() {
    static const Poly5 t2 = [] {
        auto x = [](int i) { return Poly5::variable(i); };
        return x(0) * x(0) + x(1) * x(1) + x(2) * x(2) + x(3) * x(3) +
               x(4) * x(4) + x(0) * x(3);
    }();
    return t2;
}

inline const Poly5& invariant_t3() {
    static const Poly5 t3 = [] {
        auto x = [](int i) { return Poly5::variable(i); };
        return x(0) * (x(1) * x(1) - x(3) * x(3) - x(4) * x(4)) -
               x(3) * (x(0) * x(0) - x(1) * x(1) + x(2) * x(2)) +
               Rational(2) * (x(1) * x(2) * x(4));
    }();
    return t3;
}

// ---------------------------------------------------------------------------
// Q-matrix coordinatization: Q = [[x1,x2,x3],[x2,x4,x5],[x3,x5,-x1-x4]]

template <class T>
inline std::array<std::array<T, 3>, 3> qmatrix(const std::array<T, 5>& x) {
    return {{{x[0], x[1], x[2]}, {x[1], x[3], x[4]}, {x[2], x[4], T(0) - x[0] - x[3]}}};
}

inline std::array<Rational, 5> qmatrix_inverse(const std::array<std::array<Rational, 3>, 3>& q) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (q[i][j] != q[j][i]) throw std::invalid_argument("qmatrix_inverse: matrix not symmetric");
    if (q[0][0] + q[1][1] + q[2][2] != 0)
        throw std::invalid_argument("qmatrix_inverse: matrix not traceless");
    return {q[0][0], q[0][1], q[0][2], q[1][1], q[1][2]};
}

// ---------------------------------------------------------------------------
// Infinitesimal action

inline PolyVec5 generator_vector_field(int a) {
    if (a < 1 || a > 3) throw std::out_of_range("generator index must be 1..3");
    const Mat5i& J = generators().adjoint[a - 1];
    PolyVec5 v;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (J[i][j]) v[i] += Rational(J[i][j]) * Poly5::variable(j);
    return v;
}

inline Poly5 lie_derivative(const Poly5& p, int a) {
    PolyVec5 v = generator_vector_field(a);
    Poly5 r;
    for (int i = 0; i < 5; ++i) r += p.diff(i) * v[i];
    return r;
}

// ---------------------------------------------------------------------------
// Covariant catalog

struct CovariantField {
    int degree = 0;
    std::string label;
    PolyVec5 field;
};

inline const PolyVec5& covariant_f2_field() {
    static const PolyVec5 f2 = [] {
        auto x = [](int i) { return Poly5::variable(i); };
        PolyVec5 f;
        f[0] = x(0) * x(0) + x(1) * x(1) + x(2) * x(2) -
               Rational(2) * (x(0) * x(3) + x(3) * x(3) + x(4) * x(4));
        f[1] = Rational(3) * (x(0) * x(1) + x(1) * x(3) + x(2) * x(4));
        f[2] = Rational(3) * (x(1) * x(4) - x(2) * x(3));
        f[3] = x(1) * x(1) + x(3) * x(3) + x(4) * x(4) -
               Rational(2) * (x(0) * x(0) + x(2) * x(2) + x(0) * x(3));
        f[4] = Rational(3) * (x(1) * x(2) - x(0) * x(4));
        return f;
    }();
    return f2;
}

inline PolyVec5 scale_vec(const PolyVec5& v, const Poly5& s) {
    PolyVec5 r;
    for (int i = 0; i < 5; ++i) r[i] = s * v[i];
    return r;
}

inline const std::vector<CovariantField>& covariant_catalog() {
    static const std::vector<CovariantField> cat = [] {
        PolyVec5 x;
        for (int i = 0; i < 5; ++i) x[i] = Poly5::variable(i);
        const Poly5& t2 = invariant_t2();
        const Poly5& t3 = invariant_t3();
        const PolyVec5& f2 = covariant_f2_field();
        Poly5 t2sq = t2 * t2;
        std::vector<CovariantField> c;
        c.push_back({1, "F1", x});
        c.push_back({2, "F2", f2});
        c.push_back({3, "F3", scale_vec(x, t2)});
        c.push_back({4, "F4_1", scale_vec(x, t3)});
        c.push_back({4, "F4_2", scale_vec(f2, t2)});
        c.push_back({5, "F5_1", scale_vec(x, t2sq)});
        c.push_back({5, "F5_2", scale_vec(f2, t3)});
        c.push_back({6, "F6_1", scale_vec(x, t2 * t3)});
        c.push_back({6, "F6_2", scale_vec(f2, t2sq)});
        c.push_back({7, "F7_1", scale_vec(x, t2sq * t2)});
        c.push_back({7, "F7_2", scale_vec(x, t3 * t3)});
        c.push_back({7, "F7_3", scale_vec(f2, t2 * t3)});
        c.push_back({8, "F8_1", scale_vec(x, t2sq * t3)});
        c.push_back({8, "F8_2", scale_vec(f2, t2sq * t2)});
        c.push_back({8, "F8_3", scale_vec(f2, t3 * t3)});
        return c;
    }();
    return cat;
}

inline const CovariantField& covariant(const std::string& label) {
    for (const auto& c : covariant_catalog())
        if (c.label == label) return c;
    throw std::invalid_argument("unknown covariant label: " + label);
}

struct CovarianceCheck {
    bool covariant = false;
    std::array<PolyVec5, 3> residual;  // per generator
};

// Exact identity DF(x) (J_a x) = J_a F(x) for a = 1,2,3.
inline CovarianceCheck check_covariance(const PolyVec5& f) {
    CovarianceCheck out;
    out.covariant = true;
    for (int a = 1; a <= 3; ++a) {
        const Mat5i& J = generators().adjoint[a - 1];
        PolyVec5 v = generator_vector_field(a);
        for (int i = 0; i < 5; ++i) {
            Poly5 lhs;
            for (int j = 0; j < 5; ++j) lhs += f[i].diff(j) * v[j];
            Poly5 rhs;
            for (int j = 0; j < 5; ++j)
                if (J[i][j]) rhs += Rational(J[i][j]) * f[j];
            out.residual[a - 1][i] = lhs - rhs;
            if (!out.residual[a - 1][i].is_zero()) out.covariant = false;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Molien counting

enum class MolienTarget { invariants, covariants };

// Exact power-series expansion of 1/((1-t^2)(1-t^3)) or
// (t+t^2)/((1-t^2)(1-t^3)) through t^max_degree.
inline std::vector<long> molien_series(MolienTarget target, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    // numerator / denominator coefficient arrays
    std::vector<long> den(max_degree + 1, 0), num(max_degree + 1, 0), out(max_degree + 1, 0);
    // (1-t^2)(1-t^3) = 1 - t^2 - t^3 + t^5
    auto set = [&](std::vector<long>& v, int d, long c) { if (d <= max_degree) v[d] = c; };
    set(den, 0, 1); set(den, 2, -1); set(den, 3, -1); set(den, 5, 1);
    if (target == MolienTarget::invariants) {
        set(num, 0, 1);
    } else {
        set(num, 1, 1); set(num, 2, 1);
    }
    for (int d = 0; d <= max_degree; ++d) {
        long s = num[d];
        for (int j = 1; j <= d; ++j) s -= den[j] * out[d - j];
        out[d] = s;  // den[0] == 1
    }
    return out;
}

// Exact rank of a rational matrix by Gaussian elimination.
inline int exact_rank(std::vector<std::vector<Rational>> m) {
    int rank = 0;
    std::size_t rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        Rational p = m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

// Dimension of the span of degree-d invariant products of T2,T3 (invariants)
// or of the degree-d catalog covariants, via exact rank on monomial
// coefficient vectors. Must match the Molien coefficient.
inline int independent_count(int degree, MolienTarget target) {
    if (degree < 1 || degree > 8) throw std::invalid_argument("degree must be 1..8");
    std::vector<std::vector<Rational>> rows;
    std::map<std::pair<int, Exponents>, std::size_t> col_of;  // (component, monomial)
    auto row_of = [&](const PolyVec5& v) {
        std::vector<std::pair<std::pair<int, Exponents>, Rational>> entries;
        for (int i = 0; i < 5; ++i)
            for (const auto& [m, c] : v[i].terms())
                entries.push_back({{i, m}, c});
        for (auto& [key, c] : entries)
            if (!col_of.count(key)) col_of[key] = col_of.size();
        return entries;
    };
    std::vector<std::vector<std::pair<std::pair<int, Exponents>, Rational>>> sparse_rows;
    if (target == MolienTarget::invariants) {
        for (int a = 0; 2 * a <= degree; ++a) {
            int rem = degree - 2 * a;
            if (rem % 3 != 0) continue;
            int b = rem / 3;
            Poly5 p = pow_trunc(invariant_t2(), a, -1) * pow_trunc(invariant_t3(), b, -1);
            PolyVec5 v;
            v[0] = p;
            sparse_rows.push_back(row_of(v));
        }
    } else {
        for (const auto& c : covariant_catalog())
            if (c.degree == degree) sparse_rows.push_back(row_of(c.field));
    }
    std::size_t ncols = col_of.size();
    for (const auto& sr : sparse_rows) {
        std::vector<Rational> row(ncols, Rational(0));
        for (const auto& [key, c] : sr) row[col_of[key]] = c;
        rows.push_back(std::move(row));
    }
    return exact_rank(std::move(rows));
}

// ---------------------------------------------------------------------------
// Orbit geometry

struct OrbitPoint {
    double t2 = 0, t3 = 0, q = 0;
    double omega_paper = 0, omega_trace = 0;
    bool isotropic = false;  // t2 == 0: omega undefined
};

inline double omega_of(double t2, double t3) {
    return 1.0 - std::sqrt(6.0 * t3 * t3 / (t2 * t2 * t2));
}

inline OrbitPoint orbit_geometry(const std::array<double, 5>& x) {
    OrbitPoint p;
    p.t2 = invariant_t2().evaluate(x);
    p.t3 = invariant_t3().evaluate(x);
    if (p.t2 <= 0) {
        p.isotropic = true;
        return p;
    }
    p.q = std::sqrt(p.t2);
    p.omega_paper = omega_of(p.t2, p.t3);
    // trace-normalized pair (Tr Q^2, Tr Q^3) = (2 T2, 3 T3)
    p.omega_trace = omega_of(2.0 * p.t2, 3.0 * p.t3);
    return p;
}

enum class NormConvention { trace, explicit_form };

// (T2)^3 - 6 (T3)^2 - 2 (l1-l2)^2 (2 l1+l2)^2 (l1+2 l2)^2 at the diagonal
// point (l1,0,0,l2,0), with T2,T3 per the chosen convention. Vanishes
// identically only in the trace convention.
inline Rational isotropy_residual(const Rational& l1, const Rational& l2, NormConvention conv) {
    std::array<Rational, 5> x{l1, 0, 0, l2, 0};
    Rational t2 = invariant_t2().evaluate(x);
    Rational t3 = invariant_t3().evaluate(x);
    if (conv == NormConvention::trace) {
        t2 *= 2;
        t3 *= 3;
    }
    Rational f = (l1 - l2) * (2 * l1 + l2) * (l1 + 2 * l2);
    return t2 * t2 * t2 - 6 * t3 * t3 - 2 * f * f;
}

// T2 and T3 are unchanged under the listed coordinate substitutions, and the
// gradient of any invariant expansion is tangent to the uniaxial line
// {x2=x3=x5=0, x4=x1} (checked on sample invariants at random points).
inline bool discrete_symmetry_check() {
    const Poly5& t2 = invariant_t2();
    const Poly5& t3 = invariant_t3();
    struct Map { std::array<int, 5> perm, sign; };
    // x -> (x4, x2, +-x5, x1, +-x3): swap of the two diagonal entries
    // x -> (x1, -x2, -x3, x4, x5) and (x1, -x2, x3, x4, -x5): sign flips
    const Map maps[] = {
        {{3, 1, 4, 0, 2}, {1, 1, 1, 1, 1}},
        {{3, 1, 4, 0, 2}, {1, 1, -1, 1, -1}},
        {{0, 1, 2, 3, 4}, {1, -1, -1, 1, 1}},
        {{0, 1, 2, 3, 4}, {1, -1, 1, 1, -1}},
    };
    for (const auto& m : maps) {
        if (!(t2.substitute_signed_permutation(m.perm, m.sign) == t2)) return false;
        if (!(t3.substitute_signed_permutation(m.perm, m.sign) == t3)) return false;
    }
    // gradient tangency on the invariant line
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    const Poly5 samples[] = {t2, t3, t2 * t2 * t2, t2 * t3 + Rational(3) * t3 * t3};
    for (int trial = 0; trial < 10; ++trial) {
        Rational lam(num(rng), den(rng));
        std::array<Rational, 5> x{lam, 0, 0, lam, 0};
        for (const Poly5& p : samples) {
            PolyVec5 g = gradient(p);
            if (g[1].evaluate(x) != 0) return false;
            if (g[2].evaluate(x) != 0) return false;
            if (g[4].evaluate(x) != 0) return false;
            if (g[0].evaluate(x) != g[3].evaluate(x)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Orbit-space structures

inline std::array<std::array<Rational, 5>, 5> orbit_space_metric() {
    std::array<std::array<Rational, 5>, 5> m{};
    for (int i = 0; i < 5; ++i) m[i][i] = 1;
    m[0][0] = Rational(4, 3);
    m[3][3] = Rational(4, 3);
    m[0][3] = Rational(-2, 3);
    m[3][0] = Rational(-2, 3);
    return m;
}

template <class T>
inline std::array<std::array<T, 2>, 2> pi_matrix(const T& t2, const T& t3) {
    return {{{T(4) * t2, T(6) * t3}, {T(6) * t3, T(4) * t2 * t2 / T(3)}}};
}

// Gram-matrix identity: (grad Ta)^T M (grad Tb) expands to the Pi entries.
// Returns the three residual polynomials (zero iff the identity holds).
inline std::array<Poly5, 3> pi_gram_residual() {
    auto m = orbit_space_metric();
    PolyVec5 g2 = gradient(invariant_t2());
    PolyVec5 g3 = gradient(invariant_t3());
    auto pair = [&](const PolyVec5& a, const PolyVec5& b) {
        Poly5 r;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                if (m[i][j] != 0) r += m[i][j] * (a[i] * b[j]);
        return r;
    };
    const Poly5& t2 = invariant_t2();
    const Poly5& t3 = invariant_t3();
    return {pair(g2, g2) - Rational(4) * t2,
            pair(g2, g3) - Rational(6) * t3,
            pair(g3, g3) - Rational(4, 3) * (t2 * t2)};
}

// Action of the homological operator on a monomial T2^a T3^b: the monomial is
// an eigenvector with eigenvalue 4 c1 a.
inline Rational homological_eigenvalue(int a, const Rational& c1) {
    return Rational(4) * c1 * a;
}

}  // namespace ldg
