// JSON conversions for the coefficient records, transformation data and
// reduction reports. Rationals travel as exact "num/den" strings; floating
// point values are printed with 17 significant digits.
#pragma once

#include <json.hpp>
#include <cmath>
#include <cstdio>
#include <string>

#include "ldg/critical.hpp"

namespace ldg {

using nlohmann::json;

inline json rational_json(const Rational& r) { return format_rational(r); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        std::string s(buf);
        // %.17g may emit exponent notation; route through a scaled literal
        auto epos = s.find_first_of("eE");
        if (epos == std::string::npos) return parse_rational(s);
        Rational base = parse_rational(s.substr(0, epos));
        int ex = std::stoi(s.substr(epos + 1));
        Rational pow10 = 1;
        for (int i = 0; i < std::abs(ex); ++i) pow10 *= 10;
        return ex >= 0 ? Rational(base * pow10) : Rational(base / pow10);
    }
    throw std::invalid_argument("rational field must be a string or number");
}

inline json float_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return json::parse(std::string(buf), nullptr, true);
}

inline json to_json(const LdGCoefficients& c) {
    json j = json::object();
    for (int i = 0; i < kTBasisSize; ++i) j["c" + std::to_string(i + 1)] = rational_json(c[i]);
    return j;
}

inline LdGCoefficients coefficients_from_json(const json& j) {
    LdGCoefficients c;
    for (int i = 0; i < kTBasisSize; ++i) {
        std::string key = "c" + std::to_string(i + 1);
        if (j.contains(key)) c[i] = rational_from_json(j.at(key));
    }
    return c;
}

inline json to_json(const InvariantExpansion& e) {
    json j = json::object();
    for (int i = 0; i < kTBasisSize; ++i) j[tbasis_names()[i]] = rational_json(e[i]);
    return j;
}

inline InvariantExpansion expansion_from_json(const json& j) {
    InvariantExpansion e;
    for (int i = 0; i < kTBasisSize; ++i) {
        const std::string& key = tbasis_names()[i];
        if (j.contains(key)) e[i] = rational_from_json(j.at(key));
    }
    return e;
}

inline json to_json(const TransformCoefficients& ks) {
    json j = json::object();
    for (int i = 0; i < 11; ++i) j["k" + std::to_string(i + 1)] = rational_json(ks[i]);
    return j;
}

inline TransformCoefficients transform_from_json(const json& j) {
    TransformCoefficients ks;
    for (int i = 0; i < 11; ++i) {
        std::string key = "k" + std::to_string(i + 1);
        if (j.contains(key)) ks[i] = rational_from_json(j.at(key));
    }
    return ks;
}

inline json to_json(const ReducedPotential& r) {
    return json{{"form", reduced_form_name(r.form)},
                {"surviving", to_json(r.surviving)},
                {"validity_radius", float_json(r.validity_radius)}};
}

inline json to_json(const ReductionReport& rep) {
    return json{{"input", to_json(rep.input)},
                {"order", rep.order},
                {"transform", to_json(rep.ks)},
                {"reduced", to_json(rep.reduced)},
                {"verified", rep.verified},
                {"residual", to_json(rep.residual)},
                {"notes", rep.notes}};
}

inline json to_json(const Minimum& m) {
    json x = json::array();
    for (double v : m.x) x.push_back(float_json(v));
    return json{{"x", x},
                {"value", float_json(m.value)},
                {"t2", float_json(m.t2)},
                {"t3", float_json(m.t3)},
                {"omega_paper", float_json(m.omega_paper)},
                {"omega_trace", float_json(m.omega_trace)},
                {"phase", m.phase}};
}

inline json to_json(const HessianSpectrum& s) {
    json ev = json::array(), cf = json::array();
    for (double v : s.eigenvalues) ev.push_back(float_json(v));
    for (double v : s.closed_form) cf.push_back(float_json(v));
    return json{{"eigenvalues", ev},
                {"closed_form", cf},
                {"zero_count", s.zero_count},
                {"stable", s.stable},
                {"max_rel_err", float_json(s.max_rel_err)},
                {"notes", s.notes}};
}

}  // namespace ldg
