// Command-line surface for the reduction pipeline: reduce / verify /
// branches / scan / molien / covariants. JSON output embeds the tool
// version and the fully resolved configuration; CSV column orders are
// fixed and documented in --help. Exit codes: 0 success or verified,
// 1 usage, 2 regime violation, 3 verification failure, 4 nonexistence,
// 5 non-convex leading form.
#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ldg/serialize.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitUsage = 1;
constexpr int kExitRegime = 2;
constexpr int kExitVerification = 3;
constexpr int kExitNonexistence = 4;
constexpr int kExitNonConvex = 5;

struct Output {
    std::string path;  // empty: stdout
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream f(path);
            if (!f) throw CLI::ValidationError("--out", "cannot open " + path);
            f << text << "\n";
        }
    }
};

ldg::LdGCoefficients load_coefficients(const std::string& inline_list,
                                       const std::string& input_path) {
    if (!inline_list.empty() && !input_path.empty())
        throw CLI::ValidationError("--c/--input", "give inline coefficients or a file, not both");
    if (!inline_list.empty()) {
        ldg::LdGCoefficients c;
        std::stringstream ss(inline_list);
        std::string item;
        int i = 0;
        while (std::getline(ss, item, ',')) {
            if (i >= ldg::kTBasisSize)
                throw CLI::ValidationError("--c", "at most 9 coefficients");
            c[i++] = ldg::parse_rational(item);
        }
        return c;
    }
    if (!input_path.empty()) {
        std::ifstream f(input_path);
        if (!f) throw CLI::ValidationError("--input", "cannot open " + input_path);
        ldg::json j = ldg::json::parse(f);
        return ldg::coefficients_from_json(j);
    }
    throw CLI::ValidationError("--c/--input", "coefficients required");
}

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Grid axis "lo:hi:n" with n points, endpoints included (n=1: lo only; n=0: empty).
std::vector<double> parse_axis(const std::string& s) {
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 0)
        throw CLI::ValidationError("--grid", "axis must be lo:hi:n, got " + s);
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        v.push_back(n == 1 ? lo : lo + (hi - lo) * i / double(n - 1));
    return v;
}

// "lambda=lo:hi:n,eta=lo:hi:n"; a missing eta axis means the single value 0.
std::pair<std::vector<double>, std::vector<double>> parse_grid(const std::string& spec) {
    std::vector<double> lambdas, etas{0.0};
    bool have_lambda = false;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--grid", "expected name=lo:hi:n, got " + part);
        std::string name = part.substr(0, eq), axis = part.substr(eq + 1);
        if (name == "lambda") {
            lambdas = parse_axis(axis);
            have_lambda = true;
        } else if (name == "eta") {
            etas = parse_axis(axis);
        } else {
            throw CLI::ValidationError("--grid", "unknown axis " + name);
        }
    }
    if (!have_lambda) throw CLI::ValidationError("--grid", "lambda axis required");
    return {lambdas, etas};
}

int run_reduce(const ldg::LdGCoefficients& c, int order, const std::string& regime_flag,
               const std::string& mode_flag, char case_label, const ldg::Rational& k4,
               const ldg::Rational& k8, const Output& out) {
    std::string regime = regime_flag;
    if (regime == "auto")
        regime = ldg::resolve_regime(c) == ldg::Regime::regular ? "regular" : "singular";
    if (regime == "regular" && c[0] == 0) {
        std::cerr << "regime violation: the regular path requires c1 != 0 "
                     "(the record sits at the transition point); use --regime singular\n";
        return kExitRegime;
    }
    if (regime == "singular" && c[1] == 0) {
        std::cerr << "regime violation: the singular path requires c2 != 0\n";
        return kExitRegime;
    }
    if (regime == "regular" && order == 8 && mode_flag == "full" && c[1] == 0) {
        std::cerr << "regime violation: order-8 full mode requires c2 != 0 "
                     "(c2 appears in the k8 denominator); use --mode xi_only\n";
        return kExitRegime;
    }
    ldg::ReductionReport rep;
    if (regime == "regular") {
        if (order == 6)
            rep = ldg::reduce_regular_order6(c, k4);
        else
            rep = ldg::reduce_regular_order8(
                c, k4, mode_flag == "full" ? ldg::RegularMode::full : ldg::RegularMode::xi_only,
                k8);
    } else {
        if (order == 6) {
            rep = ldg::reduce_singular_order6(c, case_label);
        } else {
            if (case_label == 'c') {
                std::cerr << "order-8 singular reduction supports cases a and b only\n";
                return kExitUsage;
            }
            rep = ldg::reduce_singular_order8(c, case_label);
        }
    }
    ldg::json j = ldg::to_json(rep);
    j["version"] = kVersion;
    j["config"] = {{"command", "reduce"},
                   {"order", order},
                   {"regime", regime_flag},
                   {"regime_resolved", regime},
                   {"mode", mode_flag},
                   {"case", std::string(1, case_label)},
                   {"k4", ldg::rational_json(k4)},
                   {"k8", ldg::rational_json(k8)}};
    out.write(j.dump(2));
    return rep.verified ? 0 : kExitVerification;
}

int run_verify(const ldg::LdGCoefficients& c, int order, const std::string& k_list,
               const std::string& claimed_json, const Output& out) {
    ldg::TransformCoefficients ks;
    {
        std::stringstream ss(k_list);
        std::string item;
        int i = 0;
        while (std::getline(ss, item, ',')) {
            if (i >= 11) throw CLI::ValidationError("--k", "at most 11 coefficients");
            ks[i++] = ldg::parse_rational(item);
        }
    }
    ldg::InvariantExpansion achieved = ldg::apply_transform_expansion(c, ks, order);
    ldg::json j{{"version", kVersion},
                {"config",
                 {{"command", "verify"}, {"order", order}, {"transform", ldg::to_json(ks)}}},
                {"input", ldg::to_json(c)},
                {"achieved", ldg::to_json(achieved)}};
    bool ok = true;
    if (!claimed_json.empty()) {
        ldg::InvariantExpansion claimed =
            ldg::expansion_from_json(ldg::json::parse(claimed_json));
        ldg::InvariantExpansion residual;
        for (int i = 0; i < ldg::kTBasisSize; ++i) residual[i] = achieved[i] - claimed[i];
        ok = residual.is_zero();
        j["claimed"] = ldg::to_json(claimed);
        j["residual"] = ldg::to_json(residual);
        j["verified"] = ok;
    }
    out.write(j.dump(2));
    return ok ? 0 : kExitVerification;
}

int run_branches(double lambda, double eta, const std::string& format, const Output& out) {
    ldg::BranchCriticalValue bc = ldg::branch_critical_value(lambda, eta);
    if (!bc.exists) {
        std::cerr << "no critical branch exists for lambda=" << lambda << ", eta=" << eta
                  << " (need lambda >= 0 with eta > -27/4, or lambda <= 0 with eta < -27/4)\n";
        return kExitNonexistence;
    }
    double s = bc.amplitude;
    struct Row {
        char case_label;
        std::array<double, 5> rep;
        ldg::HessianSpectrum spec;
    };
    std::vector<Row> rows;
    for (char cl : {'a', 'b', 'c', 'd'}) {
        Row r;
        r.case_label = cl;
        double h = s / 2.0;
        if (cl == 'a' || cl == 'b')
            r.rep = {s, 0, 0, s, 0};
        else if (cl == 'c')
            r.rep = {h, h, 2 * h, h, -2 * h};
        else
            r.rep = {h, -h, 2 * h, h, 2 * h};
        r.spec = ldg::branch_stability(cl, lambda, eta);
        rows.push_back(r);
    }
    if (format == "json") {
        ldg::json arr = ldg::json::array();
        for (const auto& r : rows) {
            ldg::OrbitPoint op = ldg::orbit_geometry(r.rep);
            ldg::json x = ldg::json::array();
            for (double v : r.rep) x.push_back(ldg::float_json(v));
            arr.push_back({{"case", std::string(1, r.case_label)},
                           {"representative", x},
                           {"t2", ldg::float_json(op.t2)},
                           {"t3", ldg::float_json(op.t3)},
                           {"omega_paper", ldg::float_json(op.omega_paper)},
                           {"omega_trace", ldg::float_json(op.omega_trace)},
                           {"amplitude", ldg::float_json(s)},
                           {"spectrum", ldg::to_json(r.spec)}});
        }
        ldg::json j{{"version", kVersion},
                    {"config",
                     {{"command", "branches"},
                      {"lambda", ldg::float_json(lambda)},
                      {"eta", ldg::float_json(eta)}}},
                    {"branches", arr}};
        out.write(j.dump(2));
    } else {
        std::ostringstream os;
        os << "case,x1,x2,x3,x4,x5,t2,t3,omega_paper,omega_trace,amplitude,"
              "ev1,ev2,ev3,ev4,ev5,stable";
        for (const auto& r : rows) {
            ldg::OrbitPoint op = ldg::orbit_geometry(r.rep);
            os << "\n" << r.case_label;
            for (double v : r.rep) os << "," << csv_num(v);
            os << "," << csv_num(op.t2) << "," << csv_num(op.t3) << ","
               << csv_num(op.omega_paper) << "," << csv_num(op.omega_trace) << ","
               << csv_num(s);
            for (double v : r.spec.eigenvalues) os << "," << csv_num(v);
            os << "," << (r.spec.stable ? 1 : 0);
        }
        out.write(os.str());
    }
    return 0;
}

int run_scan(int order, const std::string& grid_spec, unsigned seed, int jobs, int starts,
             const Output& out) {
    auto [lambdas, etas] = parse_grid(grid_spec);
    struct Point {
        double lambda, eta;
    };
    std::vector<Point> points;
    for (double l : lambdas)
        for (double e : etas) points.push_back({l, e});

    struct Row {
        std::string text;
        bool nonconvex = false;
        std::string witness;
    };
    std::vector<Row> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const auto& pt = points[i];
            ldg::InvariantExpansion e =
                order == 8 ? ldg::reduced_order8_expansion(ldg::Rational(pt.lambda),
                                                           ldg::Rational(pt.eta))
                           : ldg::reduced_order6_expansion(ldg::Rational(-pt.lambda));
            ldg::ConvexityResult cx = ldg::convexity_check(e);
            if (!cx.convex) {
                rows[i].nonconvex = true;
                std::ostringstream os;
                os << "lambda=" << pt.lambda << " eta=" << pt.eta
                   << " witness omega=" << cx.witness_omega;
                rows[i].witness = os.str();
                continue;
            }
            // per-point seed fixed by grid index: deterministic across --jobs
            auto minima = ldg::minimize_classify(e, starts, seed + (unsigned)i * 7919u);
            std::ostringstream os;
            os << csv_num(pt.lambda) << "," << csv_num(pt.eta) << "," << minima.size();
            if (minima.empty()) {
                os << ",,,,,,,0,";
            } else {
                const auto& m = minima.front();
                // T3-degeneracy: several minima share value and T2 but not T3
                bool degenerate = false;
                for (std::size_t a = 1; a < minima.size(); ++a) {
                    const auto& n = minima[a];
                    double vs = std::max(1.0, std::abs(m.value));
                    if (std::abs(n.value - m.value) < 1e-6 * vs &&
                        std::abs(n.t2 - m.t2) < 1e-6 && std::abs(n.t3 - m.t3) > 1e-6)
                        degenerate = true;
                }
                os << "," << csv_num(m.value) << "," << csv_num(m.t2) << "," << csv_num(m.t3)
                   << "," << csv_num(m.omega_paper) << "," << csv_num(m.omega_trace) << ","
                   << m.phase << "," << (degenerate ? 1 : 0) << ","
                   << (ldg::stability_window(pt.lambda, pt.eta) ? 1 : 0);
            }
            rows[i].text = os.str();
        }
    };
    int nworkers = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int w = 1; w < nworkers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& r : rows)
        if (r.nonconvex) {
            std::cerr << "non-convex leading form at grid point " << r.witness << "\n";
            return kExitNonConvex;
        }
    std::ostringstream os;
    os << "lambda,eta,n_minima,min_value,t2,t3,omega_paper,omega_trace,phase,"
          "t3_degenerate,stable_window";
    for (const auto& r : rows) os << "\n" << r.text;
    out.write(os.str());
    return 0;
}

int run_molien(int max_degree, const std::string& format, const Output& out) {
    auto inv = ldg::molien_series(ldg::MolienTarget::invariants, max_degree);
    auto cov = ldg::molien_series(ldg::MolienTarget::covariants, max_degree);
    int rank_limit = std::min(max_degree, 8);
    std::vector<std::string> labels_by_degree(max_degree + 1);
    for (const auto& c : ldg::covariant_catalog())
        if (c.degree <= max_degree) {
            auto& s = labels_by_degree[c.degree];
            if (!s.empty()) s += " ";
            s += c.label;
        }
    if (format == "json") {
        ldg::json rows = ldg::json::array();
        for (int d = 0; d <= max_degree; ++d) {
            ldg::json row{{"degree", d},
                          {"invariants", inv[d]},
                          {"covariants", cov[d]},
                          {"labels", labels_by_degree[d]}};
            if (d >= 1 && d <= rank_limit) {
                row["rank_invariants"] =
                    ldg::independent_count(d, ldg::MolienTarget::invariants);
                row["rank_covariants"] =
                    ldg::independent_count(d, ldg::MolienTarget::covariants);
            }
            rows.push_back(row);
        }
        ldg::json j{{"version", kVersion},
                    {"config", {{"command", "molien"}, {"max_degree", max_degree}}},
                    {"table", rows}};
        out.write(j.dump(2));
    } else {
        std::ostringstream os;
        os << "degree,invariants,covariants,rank_invariants,rank_covariants,labels";
        for (int d = 0; d <= max_degree; ++d) {
            os << "\n" << d << "," << inv[d] << "," << cov[d] << ",";
            if (d >= 1 && d <= rank_limit)
                os << ldg::independent_count(d, ldg::MolienTarget::invariants);
            os << ",";
            if (d >= 1 && d <= rank_limit)
                os << ldg::independent_count(d, ldg::MolienTarget::covariants);
            os << "," << labels_by_degree[d];
        }
        out.write(os.str());
    }
    return 0;
}

int run_covariants(const std::string& format, const Output& out) {
    if (format == "json") {
        ldg::json rows = ldg::json::array();
        for (const auto& c : ldg::covariant_catalog()) {
            ldg::CovarianceCheck chk = ldg::check_covariance(c.field);
            rows.push_back({{"label", c.label},
                            {"degree", c.degree},
                            {"covariant", chk.covariant}});
        }
        ldg::json j{{"version", kVersion},
                    {"config", {{"command", "covariants"}}},
                    {"catalog", rows}};
        out.write(j.dump(2));
    } else {
        std::ostringstream os;
        os << "label,degree,covariant";
        for (const auto& c : ldg::covariant_catalog()) {
            ldg::CovarianceCheck chk = ldg::check_covariance(c.field);
            os << "\n" << c.label << "," << c.degree << "," << (chk.covariant ? 1 : 0);
        }
        out.write(os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact reduction and critical-point toolkit for quintic-variable "
                 "invariant potentials"};
    app.require_subcommand(1);
    // NO_COLOR: every output path is plain text already

    std::string c_inline, input_path, out_path, regime = "auto", mode = "full";
    std::string case_str = "a", k4_str = "0", k8_str = "0", format = "json";
    std::string k_list, claimed;
    std::string branches_format = "csv";
    std::string grid_spec;
    int order = 6, max_degree = 8, jobs = 1, starts = 24;
    unsigned seed = 1;
    double lambda = 0, eta = 0;

    auto add_coeffs = [&](CLI::App* cmd) {
        cmd->add_option("--c", c_inline, "inline coefficients c1,...,c9 (rationals)");
        cmd->add_option("--input", input_path,
                        "JSON coefficient file {\"c1\": \"-3/2\", ..., \"c9\": \"0\"}");
    };

    CLI::App* reduce = app.add_subcommand("reduce", "reduce a coefficient record to its form");
    add_coeffs(reduce);
    reduce->add_option("--order", order, "truncation order")->check(CLI::IsMember({6, 8}));
    reduce->add_option("--regime", regime, "regular | singular | auto")
        ->check(CLI::IsMember({"regular", "singular", "auto"}));
    reduce->add_option("--mode", mode, "order-8 regular mode: full | xi_only")
        ->check(CLI::IsMember({"full", "xi_only"}));
    reduce->add_option("--case", case_str, "singular target case: a | b | c")
        ->check(CLI::IsMember({"a", "b", "c"}));
    reduce->add_option("--k4", k4_str, "free transformation coefficient k4 (rational)");
    reduce->add_option("--k8", k8_str, "frozen k8 in xi_only mode (rational)");
    reduce->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* verify = app.add_subcommand(
        "verify", "apply an explicit transformation k1,...,k11 and report the outcome");
    add_coeffs(verify);
    verify->add_option("--order", order, "truncation order")->check(CLI::IsMember({6, 8}));
    verify->add_option("--k", k_list, "transformation coefficients k1,...,k11 (rationals)")
        ->required();
    verify->add_option("--claimed", claimed,
                       "claimed surviving expansion as inline JSON with T-basis keys");
    verify->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* branches = app.add_subcommand(
        "branches",
        "critical branches of -lambda*T2 + eta*T2*T3^2 + T2^4; CSV columns: "
        "case,x1,x2,x3,x4,x5,t2,t3,omega_paper,omega_trace,amplitude,ev1..ev5,stable");
    branches->add_option("--lambda", lambda, "linear coefficient")->required();
    branches->add_option("--eta", eta, "sixth-order coefficient")->required();
    branches->add_option("--format", branches_format, "csv (default) | json")
        ->check(CLI::IsMember({"json", "csv"}));
    branches->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* scan = app.add_subcommand(
        "scan",
        "minimize the reduced potential over a parameter grid; CSV columns: "
        "lambda,eta,n_minima,min_value,t2,t3,omega_paper,omega_trace,phase,"
        "t3_degenerate,stable_window");
    scan->add_option("--order", order, "reduced potential order: 6 or 8")
        ->check(CLI::IsMember({6, 8}));
    scan->add_option("--grid", grid_spec,
                     "grid spec lambda=lo:hi:n[,eta=lo:hi:n]; n points per axis, "
                     "endpoints included, n=0 empty")
        ->required();
    scan->add_option("--seed", seed, "random restart seed");
    scan->add_option("--jobs", jobs, "worker threads (output independent of this)");
    scan->add_option("--starts", starts, "random restarts per grid point");
    scan->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* molien = app.add_subcommand(
        "molien", "per-degree invariant/covariant counts with independent rank checks");
    molien->add_option("--max-degree", max_degree, "table upper degree")
        ->check(CLI::Range(0, 32));
    molien->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    molien->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* covariants =
        app.add_subcommand("covariants", "catalog of the 15 covariant fields with checks");
    covariants->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    covariants->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);
    Output out{out_path};
    try {
        if (reduce->parsed())
            return run_reduce(load_coefficients(c_inline, input_path), order, regime, mode,
                              case_str[0], ldg::parse_rational(k4_str),
                              ldg::parse_rational(k8_str), out);
        if (verify->parsed())
            return run_verify(load_coefficients(c_inline, input_path), order, k_list, claimed,
                              out);
        if (branches->parsed()) return run_branches(lambda, eta, branches_format, out);
        if (scan->parsed()) return run_scan(order, grid_spec, seed, jobs, starts, out);
        if (molien->parsed()) return run_molien(max_degree, format, out);
        if (covariants->parsed()) return run_covariants(format, out);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
