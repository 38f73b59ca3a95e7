// Exact rational scalar type used throughout the algebraic pipeline,
// plus parsing/formatting helpers ("num/den" strings, decimal literals).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ldg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Decimal integer parse; leading zeros are stripped so the cpp_int
// constructor never falls into its octal interpretation.
inline Integer parse_integer(std::string t) {
    bool neg = false;
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
        neg = t.front() == '-';
        t.erase(t.begin());
    }
    while (t.size() > 1 && t.front() == '0') t.erase(t.begin());
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad integer literal: " + t);
    Integer v(t);
    return neg ? Integer(-v) : v;
}

// Accepts "3", "-3/2", "0.25", optional leading '+'.
inline Rational parse_rational(const std::string& s) {
    std::string t = s;
    if (!t.empty() && (t.front() == '+')) t.erase(t.begin());
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        Integer num = parse_integer(t.substr(0, slash));
        Integer den = parse_integer(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rational(num, den);
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        std::size_t frac_len = t.size() - dot - 1;
        if (digits.empty()) throw std::invalid_argument("bad rational literal: " + s);
        Integer num = parse_integer(digits);
        Integer den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_integer(t));
}

inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Best rational approximation with denominator bounded by 10^digits.
// Used to keep Newton iterates from doubling their digit count each step.
inline Rational limit_denominator(const Rational& r, unsigned digits = 30) {
    Integer bound = 1;
    for (unsigned i = 0; i < digits; ++i) bound *= 10;
    if (denominator(r) <= bound) return r;
    // continued-fraction convergents
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Integer n = numerator(r), d = denominator(r);
    bool neg = n < 0;
    if (neg) n = -n;
    while (d != 0) {
        Integer a = n / d;
        Integer q2 = q0 + a * q1;
        if (q2 > bound) break;
        Integer p2 = p0 + a * p1;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Integer nd = n - a * d;
        n = d; d = nd;
    }
    Rational best(p1, q1);
    return neg ? Rational(-best) : best;
}

}  // namespace ldg
