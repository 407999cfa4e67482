#pragma once
// Global layer over Q: divisor sums, the divisor-sum summation formulas, constant terms
// of the Eisenstein series, and the adelic Poisson summation check.

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vsf/arch.hpp"
#include "vsf/padic.hpp"

namespace vsf {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Report {
    cplx lhs = 0, rhs = 0;
    std::vector<std::pair<std::string, cplx>> main_terms;
    double abs_err = 0, rel_err = 0;
    struct Truncation {
        long n_max = 0;
        double tail_estimate = 0;    // empirical envelope extrapolation
        double ibp_tail_bound = -1;  // rigorous-style bound when available, else -1
    } truncation_data;
    double timing_ms = 0;
    std::vector<std::string> notes;

    void finish() {
        abs_err = std::abs(lhs - rhs);
        double den = std::abs(lhs) > 0 ? std::abs(lhs) : std::max(std::abs(rhs), 1e-300);
        rel_err = abs_err / den;
    }
};

namespace detail {

inline nlohmann::ordered_json cplx_json(cplx z) {
    if (z.imag() == 0) return z.real();
    return nlohmann::ordered_json::array({z.real(), z.imag()});
}

inline std::string cplx_text(cplx z) {
    std::ostringstream o;
    o.precision(17);
    o << z.real();
    if (z.imag() != 0) o << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return o.str();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const Report& r, bool with_timing = true) {
    nlohmann::ordered_json j;
    j["lhs"] = detail::cplx_json(r.lhs);
    j["rhs"] = detail::cplx_json(r.rhs);
    auto mt = nlohmann::ordered_json::array();
    for (auto& [name, v] : r.main_terms) mt.push_back({{"name", name}, {"value", detail::cplx_json(v)}});
    j["main_terms"] = mt;
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["truncation_data"] = {{"n_max", r.truncation_data.n_max},
                            {"tail_estimate", r.truncation_data.tail_estimate},
                            {"ibp_tail_bound", r.truncation_data.ibp_tail_bound}};
    if (with_timing) j["timing_ms"] = r.timing_ms;
    j["notes"] = r.notes;
    return j;
}

// one row per named term, then lhs/rhs/errors
inline std::string to_csv(const Report& r) {
    std::ostringstream o;
    o << "name,value\n";
    for (auto& [name, v] : r.main_terms) o << name << "," << detail::cplx_text(v) << "\n";
    o << "lhs," << detail::cplx_text(r.lhs) << "\n";
    o << "rhs," << detail::cplx_text(r.rhs) << "\n";
    o << "abs_err," << detail::cplx_text(r.abs_err) << "\n";
    o << "rel_err," << detail::cplx_text(r.rel_err) << "\n";
    return o.str();
}

// ------------------------------------------------------------------ arithmetic

// prime factorization by trial division
inline std::vector<std::pair<unsigned long long, int>> factorize(unsigned long long n) {
    std::vector<std::pair<unsigned long long, int>> f;
    for (unsigned long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline cplx divisor_sigma(unsigned long long n, cplx w) {
    if (n == 0) throw std::domain_error("divisor_sigma: n must be positive");
    cplx prod = 1;
    for (auto [p, e] : factorize(n)) {
        cplx pw = std::pow(cplx(double(p)), w), term = 1, acc = 1;
        for (int i = 0; i < e; ++i) acc += (term *= pw);
        prod *= acc;
    }
    return prod;
}

inline double divisor_sigma(unsigned long long n, double w) { return divisor_sigma(n, cplx(w)).real(); }

// Z(s) = pi^(-s/2) Gamma(s/2) zeta(s)
inline cplx completed_zeta(cplx s) {
    if (s == 0.0 || s == 1.0) throw std::domain_error("completed_zeta: pole at s = 0, 1");
    return zeta_real(s) * riemann_zeta(s);
}

// ------------------------------------------------------------------ truncated sums

namespace detail {

// Sums term(n) for n = 1, 2, ... Stops once 10 consecutive terms are below small and the
// envelope extrapolation over windows of 50 terms is below tail_tol; throws past cap.
struct TruncatedSum {
    cplx sum = 0;
    long n_max = 0;
    double tail_estimate = 0;
};

template <class Term>
TruncatedSum truncated_sum(Term&& term, double small, double tail_tol, long cap, long start = 1) {
    TruncatedSum r;
    const long W = 50;
    double prev_env = -1, env = 0;
    int quiet = 0;
    for (long n = start; n <= cap; ++n) {
        cplx t = term(n);
        r.sum += t;
        env = std::max(env, std::abs(t));
        quiet = std::abs(t) < small ? quiet + 1 : 0;
        if ((n - start + 1) % W == 0) {
            if (env == 0) {
                r.tail_estimate = 0;
            } else if (prev_env > 0) {
                double rho = env / prev_env;
                r.tail_estimate = rho < 1 ? env * W * rho / (1 - rho) : HUGE_VAL;
            } else {
                r.tail_estimate = HUGE_VAL;
            }
            if (quiet >= 10 && r.tail_estimate <= tail_tol) {
                r.n_max = n;
                return r;
            }
            prev_env = env;
            env = 0;
        }
    }
    throw TruncationError("truncation budget exceeded: tail terms did not fall below tolerance by N = " + std::to_string(cap));
}

// Two integrations by parts against the Bessel phase bound the Y_0 part of the classical
// transform by (1.1 / (4 pi^2 n)) 2 pi int |phi''(y)| y sqrt(2 / (pi z)) dy with z = 4 pi sqrt(n y);
// the K_0 part is below 4 K_0(z_min) int |phi|. Summing against the mean order log n + 2 gamma of
// d(n) gives the tail estimate returned here (decays only like N^(-1/4) log N).
inline double voronoi_ibp_tail(const TestFn& phi, long N) {
    if (!phi.eval_d2) return -1;
    auto c = [&](double y) { return std::abs(phi.d2(y)) * y * std::sqrt(2 / (kPi * 4 * kPi * std::sqrt(y))); };
    double I = integrate_adaptive(c, phi.a, phi.b, 1e-10).value.real();
    double C = 1.1 / (4 * kPi * kPi) * 2 * kPi * I;  // term bound C n^(-5/4)
    double x = double(N);
    return C * 4 * std::pow(x, -0.25) * (std::log(x) + 4 + 2 * euler_gamma());
}

}  // namespace detail

inline double l1_norm(const TestFn& phi) {
    return integrate_adaptive([&](double x) { return std::abs(phi(x)); }, phi.a, phi.b, 1e-10).value.real();
}

inline double lattice_sum_on_support(const TestFn& phi, const std::function<double(long)>& weight) {
    double s = 0;
    for (long n = std::max(1L, long(std::ceil(phi.a))); n <= long(std::floor(phi.b)); ++n) s += weight(n) * phi(double(n));
    return s;
}

inline Report voronoi_classical(const TestFn& phi, double tol, long cap = 2000) {
    if (phi.a < 0) throw std::invalid_argument("voronoi_classical: phi must be supported in (0, inf)");
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    r.lhs = lattice_sum_on_support(phi, [](long n) { return divisor_sigma(n, 0.0); });
    double main = integrate_adaptive([&](double x) { return phi(x) * (std::log(x) + 2 * euler_gamma()); }, std::max(phi.a, 1e-300),
                                     phi.b, 1e-3 * tol * std::max(1.0, std::abs(r.lhs)))
                      .value.real();
    double scale = std::max({std::abs(r.lhs), std::abs(main), l1_norm(phi), 1e-300});
    auto term = [&](long n) { return cplx(divisor_sigma(n, 0.0) * oppenheim_transform(phi, double(n), 0.5, 1e-4 * tol * scale / 100)); };
    auto ts = detail::truncated_sum(term, tol * scale / 100, tol * scale / 10, cap);
    r.main_terms = {{"integral phi(x)(log x + 2 gamma)", main}, {"sum d(n) transform(n)", ts.sum}};
    r.rhs = main + ts.sum;
    r.truncation_data = {ts.n_max, ts.tail_estimate, detail::voronoi_ibp_tail(phi, ts.n_max)};
    r.notes.push_back("tail_estimate is an envelope extrapolation; ibp_tail_bound is the integration-by-parts estimate (informational)");
    r.finish();
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline Report oppenheim(const TestFn& phi, double s, double tol, long cap = 2000) {
    if (phi.a < 0) throw std::invalid_argument("oppenheim: phi must be supported in (0, inf)");
    if (!(s > 0.25 && s < 0.75) || s == 0.5) throw std::domain_error("oppenheim: need 1/4 < s < 3/4, s != 1/2");
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    auto w = [&](long n) { return divisor_sigma(n, 2 * s - 1) * std::pow(double(n), 0.5 - s); };
    r.lhs = lattice_sum_on_support(phi, w);
    const double z1 = riemann_zeta(2 * s), z2 = riemann_zeta(2 - 2 * s);
    double lo = std::max(phi.a, 1e-300), itol = 1e-3 * tol * std::max(1.0, std::abs(r.lhs));
    double m1 = z1 * integrate_adaptive([&](double x) { return phi(x) * std::pow(x, s - 0.5); }, lo, phi.b, itol).value.real();
    double m2 = z2 * integrate_adaptive([&](double x) { return phi(x) * std::pow(x, 0.5 - s); }, lo, phi.b, itol).value.real();
    double scale = std::max({std::abs(r.lhs), std::abs(m1 + m2), l1_norm(phi), 1e-300});
    auto term = [&](long n) { return cplx(w(n) * oppenheim_transform(phi, double(n), s, 1e-4 * tol * scale / 100)); };
    auto ts = detail::truncated_sum(term, tol * scale / 100, tol * scale / 10, cap);
    r.main_terms = {{"zeta(2s) integral phi(x) x^(s-1/2)", m1}, {"zeta(2-2s) integral phi(x) x^(1/2-s)", m2}, {"sum transform", ts.sum}};
    r.rhs = m1 + m2 + ts.sum;
    r.truncation_data = {ts.n_max, ts.tail_estimate, -1};
    r.finish();
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// ------------------------------------------------------------------ adelic layer

// archimedean test function times local functions at finitely many primes; every other prime
// carries the basic function with parameter s
struct AdelicFn {
    TestFn arch;
    std::map<long, ShellFn> overrides;
};

// the adelic vector whose rational sums reproduce the divisor-sum formula with weights
// sigma_{2s-1}(n) n^(1/2-s): archimedean component x^(1/2-s) phi(x)
inline AdelicFn divisor_sum_adelic(const TestFn& phi, double s) {
    if (phi.a < 0) throw std::invalid_argument("divisor_sum_adelic: phi must be supported in (0, inf)");
    auto ev = phi.eval;
    double a = phi.a, b = phi.b;
    AdelicFn f;
    f.arch = derived_fn("x^(1/2-s) " + phi.name, a, b, [=](double x) { return (x < a || x > b || x <= 0) ? 0.0 : std::pow(x, 0.5 - s) * ev(x); });
    return f;
}

// f_v(nu(u), s) = (1/zeta_v(2-2s)) int phi_v(x) psi(-u x) dx
inline cplx section_value(const TestFn& phi, double u, double s) {
    return fourier_num(phi, -u, 1e-12) / zeta_real(cplx(2 - 2 * s));
}

// p-adic section at v(u) = k, exact in S
inline RatFunc2 section_value(const ShellFn& f, int k) {
    RatFunc2 zeta_2m2s = RatFunc2(1) / (RatFunc2(1) - RatFunc2::mono(0, -2, BigRat(1, f.q * f.q)));
    return fourier_padic(f).value(k) / zeta_2m2s;
}

namespace detail {

inline cplx rf_at(const RatFunc2& r, long q, double s, cplx mu = 0.0) { return r.eval(double(q), cplx(s), mu); }

struct LocalPiece {
    long p;
    ShellFn f, Hf;
    int e;  // denominator exponent: both f and Hf vanish for v < -e
};

inline int first_nonzero_shell(const ShellFn& f) {
    if (!f.shallow.empty()) throw std::invalid_argument("adelic: local function must vanish for large |x|");
    for (int k = f.lo; k <= f.hi; ++k)
        if (!f.value(k).is_zero()) return k;
    return f.hi + 1;
}

inline std::vector<LocalPiece> local_pieces(const AdelicFn& phi) {
    std::vector<LocalPiece> out;
    for (auto& [p, f] : phi.overrides) {
        if (f.q != p || !is_prime(p)) throw std::invalid_argument("adelic: override at " + std::to_string(p) + " must be a ShellFn over Q_p");
        LocalPiece lp{p, f, hankel_padic(f, LocalField(p)), 0};
        lp.e = std::max({0, -first_nonzero_shell(f), -first_nonzero_shell(lp.Hf)});
        out.push_back(std::move(lp));
    }
    return out;
}

// for alpha = m / D: product over overrides of g_p(v_p(alpha)) times sigma_{2s-1} of the rest of m
inline cplx finite_weight(long m, const std::vector<LocalPiece>& pieces, double s, bool transformed) {
    unsigned long long rest = std::abs(m);
    cplx w = 1;
    for (auto& lp : pieces) {
        int v = 0;
        while (rest % lp.p == 0) rest /= lp.p, ++v;
        const ShellFn& g = transformed ? lp.Hf : lp.f;
        RatFunc2 val = g.value(v - lp.e);
        if (val.is_zero()) return 0;
        w *= rf_at(val, lp.p, s);
    }
    return w * divisor_sigma(rest, cplx(2 * s - 1));
}

inline long denominator(const std::vector<LocalPiece>& pieces) {
    long D = 1;
    for (auto& lp : pieces)
        for (int i = 0; i < lp.e; ++i) D *= lp.p;
    return D;
}

}  // namespace detail

struct ConstantTerms {
    cplx a0 = 0, b0 = 0;
    cplx f_id = 0, f_w = 0, adelic_integral = 0, phi_at_zero = 0;
    double f_w_stability = 0;  // |extrapolated - value at the finer u|
};

inline ConstantTerms constant_terms(const AdelicFn& phi, double s) {
    if (!(s < 0.5)) throw std::domain_error("constant_terms: regime needs Re(s) < 1/2");
    const TestFn& g = phi.arch;
    if (g.a <= 0 && g.b >= 0 && g(0.0) != 0) throw std::domain_error("constant_terms: archimedean component must vanish at 0");
    auto pieces = detail::local_pieces(phi);
    const cplx Z = completed_zeta(cplx(2 - 2 * s));
    // finite-place factors relative to the all-basic configuration
    cplx fin_id = 1, fin_int = 1;
    for (auto& lp : pieces) {
        LocalField L(lp.p);
        RatFunc2 M = mellin_padic(lp.f, L);
        double q = double(lp.p);
        fin_id *= detail::rf_at(M, lp.p, s, 1.0) * (1.0 - std::pow(q, 2 * s - 2));
        fin_int *= detail::rf_at(M, lp.p, s, cplx(2 * s)) * (1.0 - std::pow(q, -2 * s));
    }
    ConstantTerms c;
    double tol = 1e-12;
    auto arch_int = [&](auto w) {
        cplx v = 0;
        if (g.b > 0) v += integrate_adaptive([&](double x) { return w(x) * g(x); }, std::max(g.a, 0.0), g.b, tol).value;
        if (g.a < 0) v += integrate_adaptive([&](double x) { return w(x) * g(x); }, g.a, std::min(g.b, 0.0), tol).value;
        return v;
    };
    // f(Id) = (1/Z(2-2s)) int_A phi; basic places contribute zeta_p(2-2s)
    cplx int_arch = arch_int([](double) { return 1.0; });
    c.f_id = int_arch / zeta_real(cplx(2 - 2 * s)) * fin_id;
    // int_A |u|^(2s-1) phi(u) du; basic places contribute zeta_p(2s), continued analytically
    cplx int_pow = arch_int([&](double x) { return std::pow(std::abs(x), 2 * s - 1); });
    c.adelic_integral = int_pow * riemann_zeta(cplx(2 * s)) * fin_int;
    // f(w) = lim_{u -> 0} |u|^(2s-2) f(nu(u))-type expression, Richardson in u from 1e-2, 1e-3
    auto fw = [&](double u) { return std::pow(u, 2 * s - 2) * fourier_num(g, -1 / u, 1e-14) / zeta_real(cplx(2 - 2 * s)) * fin_id; };
    cplx f1 = fw(1e-2), f2 = fw(1e-3);
    // leading correction is of order u, so one Richardson step with ratio 10
    c.f_w = (10.0 * f2 - f1) / 9.0;
    c.f_w_stability = std::abs(c.f_w - f2);
    c.phi_at_zero = 0;
    c.a0 = c.f_id + c.adelic_integral / Z;
    c.b0 = c.f_w + c.phi_at_zero / Z;
    return c;
}

// Z(2-2s) a0(1) + sum H phi(alpha) = Z(2-2s) b0(1) + sum phi(alpha), alpha over Q^x
inline Report poisson_check(const AdelicFn& phi, double s, double tol, long cap = 2000) {
    auto t0 = std::chrono::steady_clock::now();
    if (!(s > 0 && s < 0.5)) throw std::domain_error("poisson_check: need 0 < s < 1/2");
    auto pieces = detail::local_pieces(phi);
    const long D = detail::denominator(pieces);
    const cplx Z = completed_zeta(cplx(2 - 2 * s));
    auto ct = constant_terms(phi, s);
    const TestFn& g = phi.arch;
    ArchParams ap(s, 1e-13);
    Report r;
    // finite side: alpha = m/D inside the archimedean support
    cplx sum_phi = 0;
    long mlo = long(std::ceil(g.a * D)), mhi = long(std::floor(g.b * D));
    for (long m = mlo; m <= mhi; ++m) {
        if (m == 0) continue;
        double a = double(m) / D, v = g(a);
        if (v != 0) sum_phi += v * detail::finite_weight(m, pieces, s, false);
    }
    double scale = std::max({std::abs(sum_phi), std::abs(Z * ct.f_id), l1_norm(g), 1e-300});
    auto term = [&](long m) {
        double a = double(m) / D;
        cplx w = detail::finite_weight(m, pieces, s, true);
        if (w == 0.0) return cplx(0);
        return w * (hankel_kernel(g, a, ap) + hankel_kernel(g, -a, ap));
    };
    auto ts = detail::truncated_sum(term, tol * scale / 100, tol * scale / 10, cap * D);
    r.lhs = Z * ct.a0 + ts.sum;
    r.rhs = Z * ct.b0 + sum_phi;
    r.main_terms = {{"Z(2-2s) f(Id)", Z * ct.f_id},
                    {"adelic integral |u|^(2s-1) phi", ct.adelic_integral},
                    {"sum H phi(alpha)", ts.sum},
                    {"Z(2-2s) f(w)", Z * ct.f_w},
                    {"phi(0)", ct.phi_at_zero},
                    {"sum phi(alpha)", sum_phi}};
    r.truncation_data = {ts.n_max, ts.tail_estimate, -1};
    r.notes.push_back("product of zeta_p(2s) over basic places taken as zeta(2s) by analytic continuation (2 Re s < 1)");
    r.notes.push_back("alpha runs over m/" + std::to_string(D) + ", m != 0");
    if (ct.f_w_stability > 1e-5) r.notes.push_back("f(w) extrapolation not stable to 1e-5");
    r.finish();
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

struct EisensteinValue {
    cplx value = 0;
    double tail_estimate = 0;  // twice the |terms| in the last ten shells of m
};

// E = a0(t) + (t^s / Z(2-2s)) sum_{alpha, |m| <= N} H phi(alpha t) psi(alpha x0), alpha = m/D
inline EisensteinValue eisenstein_eval(const AdelicFn& phi, double s, double t, double x0, long N) {
    if (!(t > 0)) throw std::domain_error("eisenstein_eval: need t > 0");
    auto pieces = detail::local_pieces(phi);
    const long D = detail::denominator(pieces);
    const cplx Z = completed_zeta(cplx(2 - 2 * s));
    auto ct = constant_terms(phi, s);
    ArchParams ap(s, 1e-13);
    cplx a0t = std::pow(t, 1 - s) * ct.f_id + std::pow(t, s) / Z * ct.adelic_integral;
    cplx sum = 0;
    double last = 0;
    for (long m = 1; m <= N; ++m) {
        cplx w = detail::finite_weight(m, pieces, s, true);
        if (w == 0.0) continue;
        double a = double(m) / D;
        cplx tp = w * hankel_kernel(phi.arch, a * t, ap) * std::polar(1.0, 2 * kPi * a * x0);
        cplx tm = w * hankel_kernel(phi.arch, -a * t, ap) * std::polar(1.0, -2 * kPi * a * x0);
        sum += tp + tm;
        if (m > N - 10) last += std::abs(tp) + std::abs(tm);
    }
    return {a0t + std::pow(t, s) / Z * sum, 2 * std::abs(std::pow(t, s) / Z) * last};
}

}  // namespace vsf
