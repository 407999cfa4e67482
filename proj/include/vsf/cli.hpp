#pragma once
// Verification suites behind the command-line front end, and the report they produce.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsf/arch.hpp"
#include "vsf/global.hpp"
#include "vsf/padic.hpp"

namespace vsf {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string suite;
    std::vector<double> s;  // empty: suite default
    std::vector<long> q = {2};
    std::optional<long> prime;   // poisson: place carrying the unit-group indicator
    std::optional<double> tol;   // empty: per-check defaults
    double support_a = 1.5, support_b = 20.5;
    std::string family = "bump";
    long max_n = 2000;
    std::string format = "json";

    void validate() const {
        static const std::vector<std::string> suites = {"voronoi", "oppenheim", "poisson", "local", "arch"};
        if (std::find(suites.begin(), suites.end(), suite) == suites.end()) throw ConfigError("unknown suite: " + suite);
        if (tol && !(*tol > 0)) throw ConfigError("--tol must be positive");
        if (!(support_b > support_a)) throw ConfigError("--support needs A < B");
        if (family != "bump" && family != "gaussian") throw ConfigError("--family must be bump or gaussian");
        if (max_n < 1) throw ConfigError("--max-n must be positive");
        if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
        for (long v : q)
            if (!is_prime(v)) throw ConfigError("--q must be prime (e = 0 completions of Q)");
        if (prime && !is_prime(*prime)) throw ConfigError("--prime must be prime");
    }
};

struct Check {
    std::string name, status;  // PASS, FAIL or EXACT
    nlohmann::ordered_json lhs, rhs;
    double abs_err = 0, rel_err = 0;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    bool all_passed() const {
        for (auto& c : checks)
            if (c.status == "FAIL") return false;
        return true;
    }
};

namespace detail {

inline TestFn config_fn(const RunConfig& c) {
    if (c.family == "gaussian") return gaussian_window(0.5 * (c.support_a + c.support_b), (c.support_b - c.support_a) / 14, 0);
    return mollifier_bump(c.support_a, c.support_b);
}

inline Check numeric_check(std::string name, double lhs, double rhs, double threshold, bool relative) {
    Check c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.abs_err = std::abs(lhs - rhs);
    c.rel_err = rhs != 0 ? c.abs_err / std::abs(rhs) : c.abs_err;
    c.status = (relative ? c.rel_err : c.abs_err) <= threshold ? "PASS" : "FAIL";
    c.details["threshold"] = threshold;
    c.details["measure"] = relative ? "rel_err" : "abs_err";
    return c;
}

// a residual that should vanish
inline Check residual_check(std::string name, double residual, double threshold) {
    Check c = numeric_check(std::move(name), residual, 0.0, threshold, false);
    c.rel_err = 0;
    return c;
}

inline Check exact_check(std::string name, const RatFunc2& lhs, const RatFunc2& rhs) {
    Check c;
    c.name = std::move(name);
    c.lhs = lhs.str();
    c.rhs = rhs.str();
    c.status = rf_equal(lhs, rhs) ? "EXACT" : "FAIL";
    return c;
}

inline Check report_check(std::string name, const Report& r, double tol) {
    Check c;
    c.name = std::move(name);
    c.lhs = cplx_json(r.lhs);
    c.rhs = cplx_json(r.rhs);
    c.abs_err = r.abs_err;
    c.rel_err = r.rel_err;
    c.status = r.rel_err <= tol ? "PASS" : "FAIL";
    c.details = to_json(r);
    c.details["threshold"] = tol;
    return c;
}

inline Check truncation_failure(std::string name, const TruncationError& e) {
    Check c;
    c.name = std::move(name);
    c.status = "FAIL";
    c.details["error"] = e.what();
    return c;
}

inline std::string fmt_s(double s) {
    std::ostringstream o;
    o << s;
    return o.str();
}

}  // namespace detail

inline SuiteResult run_voronoi(const RunConfig& c) {
    SuiteResult r{"voronoi", {}};
    double tol = c.tol.value_or(1e-4);
    try {
        r.checks.push_back(detail::report_check("voronoi", voronoi_classical(detail::config_fn(c), tol, c.max_n), tol));
    } catch (const TruncationError& e) {
        r.checks.push_back(detail::truncation_failure("voronoi", e));
    }
    return r;
}

inline SuiteResult run_oppenheim(const RunConfig& c) {
    SuiteResult r{"oppenheim", {}};
    double tol = c.tol.value_or(1e-4);
    auto phi = detail::config_fn(c);
    for (double s : c.s.empty() ? std::vector<double>{0.3, 0.4, 0.45} : c.s) {
        std::string name = "oppenheim s=" + detail::fmt_s(s);
        try {
            r.checks.push_back(detail::report_check(name, oppenheim(phi, s, tol, c.max_n), tol));
        } catch (const TruncationError& e) {
            r.checks.push_back(detail::truncation_failure(name, e));
        }
    }
    return r;
}

inline SuiteResult run_poisson(const RunConfig& c) {
    SuiteResult r{"poisson", {}};
    double tol = c.tol.value_or(1e-3);
    auto phi = detail::config_fn(c);
    if (phi.a <= 0) throw ConfigError("poisson: support must lie in (0, inf)");
    for (double s : c.s.empty() ? std::vector<double>{0.4} : c.s) {
        AdelicFn A = divisor_sum_adelic(phi, s);
        std::string name = "poisson s=" + detail::fmt_s(s);
        if (c.prime) {
            A.overrides[*c.prime] = shell_indicator(*c.prime, 0);
            name += " unit indicator at " + std::to_string(*c.prime);
        }
        try {
            // the truncation tolerance is tighter than the acceptance threshold
            r.checks.push_back(detail::report_check(name, poisson_check(A, s, 0.1 * tol, c.max_n), tol));
        } catch (const TruncationError& e) {
            r.checks.push_back(detail::truncation_failure(name, e));
        }
    }
    return r;
}

inline SuiteResult run_local(const RunConfig& c) {
    SuiteResult r{"local", {}};
    double tol = c.tol.value_or(1e-10);
    for (long q : c.q) {
        LocalField L(q);
        std::string at = " q=" + std::to_string(q);
        auto g = gamma_factor(L).rf;
        r.checks.push_back(detail::exact_check("gamma reflection" + at, g * g.subst_t(BigRat(1, q), -1, 0), RatFunc2(1)));
        auto m = (RatFunc2(BigRat(q, q - 1)) * mellin_padic(ngo_basic_shellfn(q), L)).swap_vars();
        auto one_minus_s = RatFunc2(1) - RatFunc2::S();
        r.checks.push_back(detail::exact_check("mellin of basic" + at, m, RatFunc2(1) / (one_minus_s * one_minus_s)));
        auto basic = basic_shellfn(q);
        auto P = bernstein_poly(basic);
        Check b;
        b.name = "bernstein compactifies basic" + at;
        bool ok = shell_equal(P.apply(basic), shell_indicator(q, 0));
        for (int k = 0; k < 30 && ok; ++k) ok = rf_equal(P.value_at_shell(basic, k), RatFunc2(k == 0 ? 1 : 0));
        b.status = ok ? "EXACT" : "FAIL";
        b.lhs = P.in_t().str();
        b.rhs = "maps basic to the unit-group indicator on 30 shells";
        r.checks.push_back(b);
        Check fe;
        fe.name = "local functional equation" + at;
        fe.status = local_fe_formal(basic, L) ? "EXACT" : "FAIL";
        fe.lhs = fe.rhs = nullptr;
        r.checks.push_back(fe);
        auto H = hankel_padic(basic, L);
        Check eig;
        eig.name = "hankel eigenfunction" + at;
        eig.status = shell_equal(H, basic) ? "EXACT" : "FAIL";
        eig.details["finding"] = eig.status == "EXACT" ? "H_s(basic) = basic on every shell" : "H_s(basic) differs from basic";
        r.checks.push_back(eig);
        for (double s : c.s.empty() ? std::vector<double>{0.3, 0.45, 0.5} : c.s)
            for (int n : {1, 2, 3}) {
                auto pv = kernel_padic_numeric(L, n, 1, q == 2 ? 12 : 6, s, n + 8);
                double closed = kernel_padic_smallx(L, n).eval(double(q), s, 0.0).real();
                Check k = detail::numeric_check("small-x kernel" + at + " v=" + std::to_string(n) + " s=" + detail::fmt_s(s), pv.value.real(),
                                                closed, tol, false);
                k.details["stabilized"] = pv.stabilized;
                r.checks.push_back(k);
            }
    }
    return r;
}

inline SuiteResult run_arch(const RunConfig& c) {
    SuiteResult r{"arch", {}};
    auto thr = [&](double d) { return c.tol.value_or(d); };
    auto bump = mollifier_bump(1, 3);
    auto gw = gaussian_window(2, 0.25, 1);
    for (double s : c.s.empty() ? std::vector<double>{0.3, 0.45, 0.5} : c.s) {
        ArchParams p(s, 1e-12);
        std::string at = " s=" + detail::fmt_s(s);
        double L1 = basic_arch(1, p, BasicRoute::closed_form).real();
        r.checks.push_back(detail::residual_check("ode residual / L(1)" + at, ode_residual(1, p) / L1, thr(1e-6)));
        r.checks.push_back(detail::residual_check("derivative commutation" + at, deriv_commutation_residual(gw, 1, p), thr(1e-4)));
        for (int n = 0; n <= 2; ++n)
            r.checks.push_back(detail::residual_check("basis action n=" + std::to_string(n) + at, basis_action_check(n, 1, p), thr(1e-4)));
        {
            // measured: H(u^2 L) = u^2 L + (s L + theta L) / (2 pi^2)
            auto L = basic_times_poly(0, s);
            double H2 = hankel_kernel(basic_times_poly(2, s), 1, p).real();
            r.checks.back().details["corrected_identity_residual"] = std::abs(H2 - L(1) - (s * L(1) + L.d1(1)) / (2 * kPi * kPi));
        }
        double eig = 0;
        for (double x : {0.5, 1.0, 2.0}) eig = std::max(eig, basis_action_check(0, x, p));
        r.checks.push_back(detail::residual_check("basic eigenfunction" + at, eig, thr(1e-5)));
        r.checks.push_back(detail::residual_check("mellin of basic" + at, mellin_basic_check(p, 0.8), thr(1e-7)));
        ArchParams pf(s, 1e-9);
        double route = 0;
        for (double u : {0.5, 2.0}) {
            cplx a = hankel_fourier(bump, u, pf), b = hankel_kernel(bump, u, pf);
            route = std::max(route, std::abs(a - b) / std::abs(b));
        }
        r.checks.push_back(detail::residual_check("dual-route hankel (relative)" + at, route, thr(1e-4)));
        if (s < 0.5) {
            r.checks.push_back(detail::residual_check("sobolev isometry (relative)" + at, isometry_residual(bump, ArchParams(s)), thr(1e-6)));
            auto res = self_inversion_residuals(gw, {1.5, 2.0, 2.5}, ArchParams(s));
            r.checks.push_back(detail::residual_check("self-inversion" + at, *std::max_element(res.begin(), res.end()), thr(1e-4)));
        }
    }
    return r;
}

inline SuiteResult run_suite(const RunConfig& c) {
    c.validate();
    try {
        if (c.suite == "voronoi") return run_voronoi(c);
        if (c.suite == "oppenheim") return run_oppenheim(c);
        if (c.suite == "poisson") return run_poisson(c);
        if (c.suite == "local") return run_local(c);
        return run_arch(c);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

inline nlohmann::ordered_json suite_json(const SuiteResult& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["suite"] = r.suite;
    auto arr = nlohmann::ordered_json::array();
    for (auto& c : r.checks)
        arr.push_back({{"name", c.name},
                       {"status", c.status},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"abs_err", c.abs_err},
                       {"rel_err", c.rel_err},
                       {"details", c.details}});
    j["checks"] = arr;
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
}

inline std::string json_text(const nlohmann::ordered_json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace detail

inline std::string suite_csv(const SuiteResult& r) {
    std::ostringstream o;
    o << "schema_version,suite,name,status,lhs,rhs,abs_err,rel_err,details\n";
    o.precision(17);
    for (auto& c : r.checks)
        o << 1 << "," << r.suite << "," << detail::csv_field(c.name) << "," << c.status << "," << detail::csv_field(detail::json_text(c.lhs)) << ","
          << detail::csv_field(detail::json_text(c.rhs)) << "," << c.abs_err << "," << c.rel_err << "," << detail::csv_field(c.details.dump())
          << "\n";
    return o.str();
}

}  // namespace vsf
