// Sparse exact-rational polynomials in the five order-parameter coordinates.
// Grading, truncated products, composition with a polynomial shift,
// differentiation and evaluation. Storage is a graded-lex ordered map;
// degree-8 polynomials in 5 variables stay small (<= 1287 monomials).
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/rational.hpp"

namespace ldg {

using Exponents = std::array<int, 5>;

inline int total_degree(const Exponents& m) {
    return m[0] + m[1] + m[2] + m[3] + m[4];
}

struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a > b;  // within a degree: lexicographic, x1 first
    }
};

// scalar_cast lets evaluate() run over double, Rational, or any ring type
// constructible from Rational (e.g. truncated power series).
template <class T>
inline T scalar_cast(const Rational& r) { return T(r); }
template <>
inline double scalar_cast<double>(const Rational& r) { return to_double(r); }

class Poly5 {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    Poly5() = default;
    static Poly5 constant(const Rational& c) {
        Poly5 p;
        if (c != 0) p.terms_[{0, 0, 0, 0, 0}] = c;
        return p;
    }
    static Poly5 variable(int i) {
        if (i < 0 || i > 4) throw std::out_of_range("variable index");
        Poly5 p;
        Exponents e{0, 0, 0, 0, 0};
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Exponents& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    void add_term(const Exponents& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int degree() const {  // -1 for the zero polynomial
        return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
    }
    int min_degree() const {
        return terms_.empty() ? -1 : total_degree(terms_.begin()->first);
    }

    friend Poly5 operator+(const Poly5& a, const Poly5& b) {
        Poly5 r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly5 operator-(const Poly5& a, const Poly5& b) {
        Poly5 r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Poly5 operator-(const Poly5& a) {
        Poly5 r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend Poly5 operator*(const Poly5& a, const Rational& s) {
        Poly5 r;
        if (s == 0) return r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = c * s;
        return r;
    }
    friend Poly5 operator*(const Rational& s, const Poly5& a) { return a * s; }
    friend Poly5 operator*(const Poly5& a, const Poly5& b) { return mul_trunc(a, b, -1); }
    Poly5& operator+=(const Poly5& b) { *this = *this + b; return *this; }
    Poly5& operator-=(const Poly5& b) { *this = *this - b; return *this; }

    friend bool operator==(const Poly5& a, const Poly5& b) { return a.terms_ == b.terms_; }

    // Product with all terms of total degree > n discarded (n < 0: no cap).
    // For n <= 8 (every hot call in the reduction pipeline) products are
    // accumulated in a dense degree-capped buffer instead of a tree.
    friend Poly5 mul_trunc(const Poly5& a, const Poly5& b, int n) {
        if (n >= 0 && n <= 8) return mul_trunc_dense(a, b, n);
        Poly5 r;
        for (const auto& [ma, ca] : a.terms_) {
            int da = total_degree(ma);
            if (n >= 0 && da > n) continue;
            for (const auto& [mb, cb] : b.terms_) {
                if (n >= 0 && da + total_degree(mb) > n) continue;
                Exponents m;
                for (int i = 0; i < 5; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    friend Poly5 pow_trunc(const Poly5& a, int k, int n) {
        Poly5 r = Poly5::constant(1);
        for (int i = 0; i < k; ++i) r = mul_trunc(r, a, n);
        return r;
    }

    // Homogeneous part of total degree k.
    Poly5 grading(int k) const {
        if (k < 0) throw std::invalid_argument("grading degree must be >= 0");
        Poly5 r;
        for (const auto& [m, c] : terms_)
            if (total_degree(m) == k) r.terms_[m] = c;
        return r;
    }
    // Drop all terms of total degree > n.
    Poly5 truncate(int n) const {
        Poly5 r;
        for (const auto& [m, c] : terms_) {
            if (total_degree(m) > n) break;
            r.terms_[m] = c;
        }
        return r;
    }

    Poly5 diff(int i) const {
        Poly5 r;
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Exponents e = m;
            e[i] -= 1;
            r.terms_[e] = c * m[i];
        }
        return r;
    }

    template <class T>
    T evaluate(const std::array<T, 5>& x) const {
        T acc = scalar_cast<T>(Rational(0));
        for (const auto& [m, c] : terms_) {
            T t = scalar_cast<T>(c);
            for (int i = 0; i < 5; ++i)
                for (int k = 0; k < m[i]; ++k) t = t * x[i];
            acc = acc + t;
        }
        return acc;
    }

    // Linear substitution x_i -> sign_i * x_{perm_i}; used for the discrete
    // symmetry checks.
    Poly5 substitute_signed_permutation(const std::array<int, 5>& perm,
                                        const std::array<int, 5>& sign) const {
        Poly5 r;
        for (const auto& [m, c] : terms_) {
            Exponents e{0, 0, 0, 0, 0};
            Rational coef = c;
            for (int i = 0; i < 5; ++i) {
                e[perm[i]] += m[i];
                if (sign[i] < 0 && (m[i] % 2 == 1)) coef = -coef;
            }
            r.add_term(e, coef);
        }
        return r;
    }

private:
    TermMap terms_;

    // Exponents fit a base-9 digit each when the total degree is capped at 8,
    // so packed keys add without carries.
    static int pack9(const Exponents& m) {
        return (((m[0] * 9 + m[1]) * 9 + m[2]) * 9 + m[3]) * 9 + m[4];
    }
    static Exponents unpack9(int p) {
        Exponents m;
        m[4] = p % 9; p /= 9;
        m[3] = p % 9; p /= 9;
        m[2] = p % 9; p /= 9;
        m[1] = p % 9; p /= 9;
        m[0] = p;
        return m;
    }

    static const std::vector<unsigned char>& packed_degree_table() {
        static const std::vector<unsigned char> tab = [] {
            std::vector<unsigned char> t(59049);
            for (int p = 0; p < 59049; ++p) t[p] = (unsigned char)total_degree(unpack9(p));
            return t;
        }();
        return tab;
    }

    static Poly5 mul_trunc_dense(const Poly5& a, const Poly5& b, int n) {
        struct Acc {
            std::vector<Rational> slot;
            std::vector<unsigned> stamp;
            std::vector<int> touched;
            std::vector<std::pair<int, const Rational*>> bterms;
            unsigned cur = 0;
            Acc() : slot(59049), stamp(59049, 0) {}
        };
        thread_local Acc acc;
        ++acc.cur;
        if (acc.cur == 0) {  // stamp wrap
            std::fill(acc.stamp.begin(), acc.stamp.end(), 0u);
            acc.cur = 1;
        }
        acc.touched.clear();
        acc.bterms.clear();
        for (const auto& [mb, cb] : b.terms_) {
            if (total_degree(mb) > n) break;  // terms are graded-ordered
            acc.bterms.push_back({pack9(mb), &cb});
        }
        const auto& deg = packed_degree_table();
        for (const auto& [ma, ca] : a.terms_) {
            int da = total_degree(ma);
            if (da > n) break;
            int pa = pack9(ma);
            int cap = n - da;
            for (const auto& [pb, cb] : acc.bterms) {
                if (deg[pb] > cap) break;
                int p = pa + pb;
                if (acc.stamp[p] != acc.cur) {
                    acc.stamp[p] = acc.cur;
                    acc.slot[p] = ca * (*cb);
                    acc.touched.push_back(p);
                } else {
                    acc.slot[p] += ca * (*cb);
                }
            }
        }
        std::sort(acc.touched.begin(), acc.touched.end(), [&deg](int x, int y) {
            if (deg[x] != deg[y]) return deg[x] < deg[y];
            return x > y;  // within a degree the packed order reverses lex
        });
        Poly5 r;
        for (int p : acc.touched)
            if (acc.slot[p] != 0) r.terms_.emplace_hint(r.terms_.end(), unpack9(p), acc.slot[p]);
        return r;
    }
};

using PolyVec5 = std::array<Poly5, 5>;

inline PolyVec5 zero_vec5() { return PolyVec5{}; }

inline PolyVec5 operator+(const PolyVec5& a, const PolyVec5& b) {
    PolyVec5 r;
    for (int i = 0; i < 5; ++i) r[i] = a[i] + b[i];
    return r;
}
inline PolyVec5 operator*(const PolyVec5& a, const Rational& s) {
    PolyVec5 r;
    for (int i = 0; i < 5; ++i) r[i] = a[i] * s;
    return r;
}
inline PolyVec5 operator*(const Rational& s, const PolyVec5& a) { return a * s; }

inline PolyVec5 gradient(const Poly5& p) {
    PolyVec5 g;
    for (int i = 0; i < 5; ++i) g[i] = p.diff(i);
    return g;
}

inline std::array<std::array<Poly5, 5>, 5> hessian(const Poly5& p) {
    std::array<std::array<Poly5, 5>, 5> h;
    for (int i = 0; i < 5; ++i) {
        Poly5 gi = p.diff(i);
        for (int j = 0; j < 5; ++j) h[i][j] = gi.diff(j);
    }
    return h;
}

// p(x + h(x)) with every term of total degree > n discarded. The shift must
// be near-identity: each nonzero component of h needs lowest degree >= 2.
inline Poly5 compose_shift(const Poly5& p, const PolyVec5& h, int n) {
    for (int i = 0; i < 5; ++i)
        if (!h[i].is_zero() && h[i].min_degree() < 2)
            throw std::invalid_argument(
                "compose_shift: shift component " + std::to_string(i + 1) +
                " has degree-" + std::to_string(h[i].min_degree()) +
                " terms; the transformation must be near-identity");
    std::array<Poly5, 5> rep;
    std::array<std::vector<Poly5>, 5> pows;  // pows[i][k] = (x_i + h_i)^k
    int maxexp[5] = {0, 0, 0, 0, 0};
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < 5; ++i) maxexp[i] = std::max(maxexp[i], m[i]);
    for (int i = 0; i < 5; ++i) {
        rep[i] = Poly5::variable(i) + h[i];
        pows[i].push_back(Poly5::constant(1));
        for (int k = 1; k <= maxexp[i]; ++k)
            pows[i].push_back(mul_trunc(pows[i][k - 1], rep[i], n));
    }
    Poly5 r;
    for (const auto& [m, c] : p.terms()) {
        Poly5 t = Poly5::constant(c);
        for (int i = 0; i < 5; ++i)
            if (m[i]) t = mul_trunc(t, pows[i][m[i]], n);
        r += t;
    }
    return r;
}

}  // namespace ldg
