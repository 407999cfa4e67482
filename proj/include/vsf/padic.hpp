#pragma once
// Non-archimedean local computations over Q_p (and formal q at e = 0): local zeta and
// gamma factors, basic functions, shell functions with exponential-polynomial tails,
// Mellin transforms, epsilon-shift polynomials, the Bessel kernel as exact character
// sums, and the Hankel transform as Fourier -> (|x|^{2s-2} f(1/x)) -> Fourier.
//
// Conventions: T = q^{-mu}, S = q^{-s}; psi(x) = exp(2 pi i {x}_p); vol(O, dx) = 1 at
// e = 0; d^x x = dx/|x| so that every shell has multiplicative volume 1 - 1/q.

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>
#include <vector>

#include "vsf/exactq.hpp"
#include "vsf/special.hpp"

namespace vsf {

struct LocalField {
    long q = 2;
    int e = 0;
    LocalField() = default;
    LocalField(long q_, int e_ = 0) : q(q_), e(e_) {
        if (q < 2 || e < 0) throw std::invalid_argument("LocalField: need q >= 2 and e >= 0");
    }
    std::string str() const { return "(q=" + std::to_string(q) + ", e=" + std::to_string(e) + ")"; }
};

inline void require_unramified(const LocalField& L, const char* what) {
    if (L.e != 0) throw std::invalid_argument(std::string(what) + ": implemented for e = 0 only");
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// rf * q^{hq/2} * T^{ht/2} * S^{hs/2}; the half exponents are always odd or zero
struct HalfPowRF {
    RatFunc2 rf;
    int half_q = 0, half_t = 0, half_s = 0;

    HalfPowRF(RatFunc2 r = {}, int hq = 0, int ht = 0, int hs = 0) : rf(std::move(r)), half_q(hq), half_t(ht), half_s(hs) {}

    void fold(long q) {
        auto pw = [&](int h) { return LaurentPoly2::rat_pow(BigRat(q), h / 2); };
        if (half_q % 2 == 0) {
            rf *= RatFunc2(pw(half_q));
            half_q = 0;
        }
        if (half_t % 2 == 0) {
            rf *= RatFunc2::T(half_t / 2);
            half_t = 0;
        }
        if (half_s % 2 == 0) {
            rf *= RatFunc2::S(half_s / 2);
            half_s = 0;
        }
    }
    bool has_marker() const { return half_q || half_t || half_s; }
    cplx eval(long q, cplx s, cplx mu) const {
        double lq = std::log(double(q));
        return rf.eval(double(q), s, mu) * std::exp(0.5 * lq * (double(half_q) - double(half_t) * mu - double(half_s) * s));
    }
    std::string str() const {
        std::string r = rf.str();
        if (has_marker())
            r = "(" + r + ") * q^(" + std::to_string(half_q) + "/2) * T^(" + std::to_string(half_t) + "/2) * S^(" +
                std::to_string(half_s) + "/2)";
        return r;
    }
};

// zeta_v(mu) = q^{e mu/2} / (1 - q^{-mu}), in T
inline HalfPowRF local_zeta(const LocalField& L) {
    HalfPowRF z(RatFunc2(1) / (RatFunc2(1) - RatFunc2::T()), 0, -L.e, 0);
    z.fold(L.q);
    return z;
}

// the same factor in the s variable
inline HalfPowRF local_zeta_s(const LocalField& L) {
    HalfPowRF z(RatFunc2(1) / (RatFunc2(1) - RatFunc2::S()), 0, 0, -L.e);
    z.fold(L.q);
    return z;
}

// gamma(mu) = zeta(1-mu)/zeta(mu) = q^{e/2} T^e (1 - T)/(1 - q^{-1} T^{-1})
inline HalfPowRF gamma_factor(const LocalField& L) {
    RatFunc2 g = (RatFunc2(1) - RatFunc2::T()) / (RatFunc2(1) - RatFunc2::mono(-1, 0, BigRat(1, L.q)));
    HalfPowRF r(g * RatFunc2::T(L.e), L.e, 0, 0);
    r.fold(L.q);
    return r;
}

// gamma at 2s and at 2 - 2s, in S (e = 0)
inline RatFunc2 gamma_2s(long q) {
    return (RatFunc2(1) - RatFunc2::S(2)) / (RatFunc2(1) - RatFunc2::mono(0, -2, BigRat(1, q)));
}
inline RatFunc2 gamma_2m2s(long q) {
    return (RatFunc2(1) - RatFunc2::mono(0, -2, BigRat(1, q * q))) / (RatFunc2(1) - RatFunc2::mono(0, 2, BigRat(q)));
}

// L_v on the shell of valuation k: |D|^{s-1/2} sum_{i=0}^{k+e} q^{i(2s-1)}
inline HalfPowRF basic_value(const LocalField& L, int k) {
    if (k + L.e < 0) return HalfPowRF();
    LaurentPoly2 acc;
    for (int i = 0; i <= k + L.e; ++i) acc.add_term(0, -2 * i, LaurentPoly2::rat_pow(BigRat(1, L.q), i));
    HalfPowRF v(RatFunc2(acc) * RatFunc2::S(L.e), L.e, 0, 0);
    v.fold(L.q);
    return v;
}

// ------------------------------------------------------------------ shell functions

// geometric ratio c * T^texp * S^sexp
struct Mono {
    BigRat c = 1;
    int texp = 0, sexp = 0;

    bool is_one() const { return c == 1 && texp == 0 && sexp == 0; }
    Mono inv() const { return {BigRat(1) / c, -texp, -sexp}; }
    friend Mono operator*(const Mono& a, const Mono& b) {
        Mono m{a.c * b.c, a.texp + b.texp, a.sexp + b.sexp};
        m.c.canonicalize();
        return m;
    }
    RatFunc2 pow(int k) const { return RatFunc2::mono(texp * k, sexp * k, LaurentPoly2::rat_pow(c, k)); }
    RatFunc2 rf() const { return pow(1); }
    friend bool operator<(const Mono& a, const Mono& b) {
        return std::tie(a.texp, a.sexp) < std::tie(b.texp, b.sexp) || (a.texp == b.texp && a.sexp == b.sexp && a.c < b.c);
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.c == b.c && a.texp == b.texp && a.sexp == b.sexp; }
};

struct TailKey {
    Mono ratio;
    int deg = 0;
    friend bool operator<(const TailKey& a, const TailKey& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        return a.ratio < b.ratio;
    }
    friend bool operator==(const TailKey& a, const TailKey& b) { return a.deg == b.deg && a.ratio == b.ratio; }
};

// sum of coeff * k^deg * ratio^k
using Tail = std::map<TailKey, RatFunc2>;

namespace detail {

inline BigRat ipow(long k, int d) {
    BigRat r = 1;
    for (int i = 0; i < d; ++i) r *= BigRat(k);
    return r;
}

inline long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline void tail_add(Tail& t, const TailKey& k, const RatFunc2& c) {
    if (c.is_zero()) return;
    auto it = t.find(k);
    if (it == t.end()) {
        t.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
}

inline RatFunc2 tail_value(const Tail& t, int k) {
    RatFunc2 v;
    for (auto& [key, c] : t) v += c * RatFunc2(ipow(k, key.deg)) * key.ratio.pow(k);
    return v;
}

// sum_{j >= 0} j^i x^j = x A_i(x) / (1-x)^{i+1} with Eulerian polynomials A_i
inline RatFunc2 eulerian_sum(int i, const Mono& x) {
    if (x.is_one()) throw std::domain_error("shell sum: formal geometric ratio equals 1 (divergent tail)");
    RatFunc2 X = x.rf(), one_minus = RatFunc2(1) - X;
    if (i == 0) return RatFunc2(1) / one_minus;
    std::vector<long> eul = {1};
    for (int n = 1; n <= i; ++n) {
        std::vector<long> nx(n, 0);
        for (int m = 0; m < n; ++m) {
            long a = m < int(eul.size()) ? (m + 1) * eul[m] : 0;
            long b = (m >= 1 && m - 1 < int(eul.size())) ? (n - m) * eul[m - 1] : 0;
            nx[m] = a + b;
        }
        eul = nx;
    }
    RatFunc2 A, p(1);
    for (long c : eul) {
        A += RatFunc2(c) * p;
        p *= X;
    }
    return X * A / one_minus.pow(i + 1);
}

// sum_{k >= n} k^d rho^k as a tail in n, plus nothing else
inline Tail suffix_tail(const TailKey& key, const RatFunc2& coeff) {
    // rho^n sum_i C(d,i) n^{d-i} E_i(rho)
    Tail t;
    for (int i = 0; i <= key.deg; ++i)
        tail_add(t, TailKey{key.ratio, key.deg - i}, coeff * RatFunc2(binom(key.deg, i)) * eulerian_sum(i, key.ratio));
    return t;
}

}  // namespace detail

// A function on valuations: explicit values on [lo, hi], exponential-polynomial tails
// beyond (deep: k > hi, i.e. towards 0 in F; shallow: k < lo, towards infinity).
struct ShellFn {
    long q = 2;
    int lo = 0, hi = -1;
    std::vector<RatFunc2> win;
    Tail deep, shallow;

    ShellFn() = default;
    explicit ShellFn(long q_) : q(q_) {}

    RatFunc2 value(int k) const {
        if (k > hi) return detail::tail_value(deep, k);
        if (k < lo) return detail::tail_value(shallow, k);
        return win[k - lo];
    }
    bool is_compact() const { return deep.empty() && shallow.empty(); }

    // the same function with explicit window covering [nlo, nhi]
    ShellFn extended(int nlo, int nhi) const {
        ShellFn r(q);
        r.lo = std::min(lo, nlo);
        r.hi = std::max(hi, nhi);
        for (int k = r.lo; k <= r.hi; ++k) r.win.push_back(value(k));
        r.deep = deep;
        r.shallow = shallow;
        return r;
    }

    std::string str() const {
        std::ostringstream o;
        o << "ShellFn(q=" << q << ") window [" << lo << "," << hi << "]:";
        for (int k = lo; k <= hi; ++k) o << "\n  k=" << k << ": " << win[k - lo].str();
        auto dump = [&](const char* nm, const Tail& t) {
            for (auto& [key, c] : t)
                o << "\n  " << nm << " k^" << key.deg << " * (" << key.ratio.c.get_str() << "*T^" << key.ratio.texp << "*S^"
                  << key.ratio.sexp << ")^k * [" << c.str() << "]";
        };
        dump("deep", deep);
        dump("shallow", shallow);
        return o.str();
    }
};

inline ShellFn shell_indicator(long q, int k, const RatFunc2& c = RatFunc2(1)) {
    ShellFn f(q);
    f.lo = f.hi = k;
    f.win = {c};
    return f;
}

// L_v at e = 0: sum_{i=0}^k R^i = 1/(1-R) - R/(1-R) R^k with R = q^{2s-1} = q^{-1} S^{-2}
inline ShellFn basic_shellfn(long q) {
    ShellFn f(q);
    f.lo = 0;
    f.hi = -1;
    Mono R{BigRat(1, q), 0, -2};
    RatFunc2 inv = RatFunc2(1) / (RatFunc2(1) - R.rf());
    f.deep[TailKey{Mono{}, 0}] = inv;
    f.deep[TailKey{R, 0}] = -R.rf() * inv;
    return f;
}

// unnormalized basic function v(x) + 1 on O
inline ShellFn ngo_basic_shellfn(long q) {
    ShellFn f(q);
    f.lo = 0;
    f.hi = -1;
    f.deep[TailKey{Mono{}, 1}] = RatFunc2(1);
    f.deep[TailKey{Mono{}, 0}] = RatFunc2(1);
    return f;
}

inline ShellFn operator+(const ShellFn& a, const ShellFn& b) {
    if (a.q != b.q) throw std::invalid_argument("ShellFn: mismatched q");
    const int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    ShellFn A = a.extended(lo, hi), B = b.extended(lo, hi);
    ShellFn r(a.q);
    r.lo = lo;
    r.hi = hi;
    for (int k = lo; k <= hi; ++k) r.win.push_back(A.win[k - lo] + B.win[k - lo]);
    r.deep = A.deep;
    for (auto& [key, c] : B.deep) detail::tail_add(r.deep, key, c);
    r.shallow = A.shallow;
    for (auto& [key, c] : B.shallow) detail::tail_add(r.shallow, key, c);
    return r;
}

inline ShellFn scaled(const ShellFn& f, const RatFunc2& c) {
    ShellFn r(f.q);
    if (c.is_zero()) return r;
    r.lo = f.lo;
    r.hi = f.hi;
    for (auto& w : f.win) r.win.push_back(w * c);
    for (auto& [key, v] : f.deep) r.deep[key] = v * c;
    for (auto& [key, v] : f.shallow) r.shallow[key] = v * c;
    return r;
}

inline ShellFn operator-(const ShellFn& a, const ShellFn& b) { return a + scaled(b, RatFunc2(-1)); }

// k -> m^k f(k)
inline ShellFn mul_geometric(const ShellFn& f, const Mono& m) {
    ShellFn r = f;
    for (int k = f.lo; k <= f.hi; ++k) r.win[k - f.lo] = f.win[k - f.lo] * m.pow(k);
    auto mv = [&](const Tail& t) {
        Tail o;
        for (auto& [key, c] : t) detail::tail_add(o, TailKey{key.ratio * m, key.deg}, c);
        return o;
    };
    r.deep = mv(f.deep);
    r.shallow = mv(f.shallow);
    return r;
}

// k -> f(-k), i.e. x -> 1/x on radial functions
inline ShellFn reflect(const ShellFn& f) {
    ShellFn r(f.q);
    r.lo = -f.hi;
    r.hi = -f.lo;
    for (int k = r.lo; k <= r.hi; ++k) r.win.push_back(f.value(-k));
    auto rv = [&](const Tail& t) {
        Tail o;
        for (auto& [key, c] : t) detail::tail_add(o, TailKey{key.ratio.inv(), key.deg}, (key.deg % 2) ? -c : c);
        return o;
    };
    r.deep = rv(f.shallow);
    r.shallow = rv(f.deep);
    return r;
}

// epsilon^n: k -> f(k - n)
inline ShellFn shift(const ShellFn& f, int n) {
    ShellFn r(f.q);
    r.lo = f.lo + n;
    r.hi = f.hi + n;
    r.win = f.win;
    auto sv = [&](const Tail& t) {
        Tail o;
        for (auto& [key, c] : t) {
            RatFunc2 base = c * key.ratio.pow(-n);
            for (int i = 0; i <= key.deg; ++i)
                detail::tail_add(o, TailKey{key.ratio, i},
                                 base * RatFunc2(BigRat(detail::binom(key.deg, i)) * detail::ipow(-n, key.deg - i)));
        }
        return o;
    };
    r.deep = sv(f.deep);
    r.shallow = sv(f.shallow);
    return r;
}

inline ShellFn epsilon_shift(const ShellFn& f) { return shift(f, 1); }

// U(n) = sum_{k >= n} f(k)
inline ShellFn suffix_sum(const ShellFn& f) {
    ShellFn r(f.q);
    r.lo = f.lo;
    r.hi = f.hi;
    for (auto& [key, c] : f.deep)
        for (auto& [k2, c2] : detail::suffix_tail(key, c)) detail::tail_add(r.deep, k2, c2);
    r.win.assign(std::max(0, f.hi - f.lo + 1), RatFunc2());
    RatFunc2 acc = detail::tail_value(r.deep, f.hi + 1);
    for (int k = f.hi; k >= f.lo; --k) {
        acc += f.win[k - f.lo];
        r.win[k - f.lo] = acc;
    }
    // n < lo: U(lo) + sum_{k=n}^{lo-1} f(k) = U(lo) + G(n) - G(lo), G the formal suffix sum
    Tail G;
    for (auto& [key, c] : f.shallow)
        for (auto& [k2, c2] : detail::suffix_tail(key, c)) detail::tail_add(G, k2, c2);
    RatFunc2 c0 = acc - detail::tail_value(G, f.lo);
    r.shallow = G;
    detail::tail_add(r.shallow, TailKey{Mono{}, 0}, c0);
    return r;
}

// sum over all k, each tail summed in closed form
inline RatFunc2 total_sum(const ShellFn& f) {
    RatFunc2 t;
    for (auto& w : f.win) t += w;
    for (auto& [key, c] : f.deep) t += detail::tail_value(detail::suffix_tail(key, c), f.hi + 1);
    // sum_{k <= lo-1} c k^d rho^k = (-1)^d c sum_{m >= 1-lo} m^d rho^{-m}
    for (auto& [key, c] : f.shallow)
        t += detail::tail_value(detail::suffix_tail(TailKey{key.ratio.inv(), key.deg}, (key.deg % 2) ? -c : c), 1 - f.lo);
    return t;
}

inline bool shell_equal(const ShellFn& a, const ShellFn& b) {
    if (a.q != b.q) return false;
    ShellFn d = a - b;
    for (auto& w : d.win)
        if (!w.is_zero()) return false;
    return d.deep.empty() && d.shallow.empty();
}

// M(f)(mu) = sum_k f(k) vol(shell k, d^x) T^k
inline RatFunc2 mellin_padic(const ShellFn& f, const LocalField& L) {
    require_unramified(L, "mellin_padic");
    if (L.q != f.q) throw std::invalid_argument("mellin_padic: q mismatch");
    return RatFunc2(BigRat(L.q - 1, L.q)) * total_sum(mul_geometric(f, Mono{1, 1, 0}));
}

// F(f)(m) = (1-1/q) sum_{k >= -m} g_k - q^{-1} g_{-m-1} with g_k = q^{-k} f_k
inline ShellFn fourier_padic(const ShellFn& f) {
    const long q = f.q;
    ShellFn g = mul_geometric(f, Mono{BigRat(1, q), 0, 0});
    ShellFn a = reflect(suffix_sum(g));
    ShellFn b = shift(reflect(g), -1);
    return scaled(a, RatFunc2(BigRat(q - 1, q))) - scaled(b, RatFunc2(BigRat(1, q)));
}

// H_s f = F( |x|^{2s-2} (F f)(1/x) ), exact for shell functions (e = 0)
inline ShellFn hankel_padic(const ShellFn& f, const LocalField& L) {
    require_unramified(L, "hankel_padic");
    ShellFn h = mul_geometric(reflect(fourier_padic(f)), Mono{BigRat(L.q * L.q), 0, 2});
    return fourier_padic(h);
}

// ------------------------------------------------------------------ epsilon polynomials

struct EpsPoly {
    std::vector<RatFunc2> coeffs;  // P(eps) = sum a_i eps^i

    int degree() const { return int(coeffs.size()) - 1; }
    ShellFn apply(const ShellFn& f) const {
        ShellFn r(f.q);
        for (int i = 0; i < int(coeffs.size()); ++i)
            if (!coeffs[i].is_zero()) r = r + scaled(shift(f, i), coeffs[i]);
        return r;
    }
    RatFunc2 value_at_shell(const ShellFn& f, int k) const {
        RatFunc2 v;
        for (int i = 0; i < int(coeffs.size()); ++i) v += coeffs[i] * f.value(k - i);
        return v;
    }
    friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
        EpsPoly r;
        r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, RatFunc2());
        for (size_t i = 0; i < a.coeffs.size(); ++i)
            for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        return r;
    }
    // P as a rational function in T (epsilon acts on Mellin transforms as multiplication by T)
    RatFunc2 in_t() const {
        RatFunc2 r;
        for (int i = 0; i < int(coeffs.size()); ++i) r += coeffs[i] * RatFunc2::T(i);
        return r;
    }
    std::string str() const {
        std::string s;
        for (int i = 0; i < int(coeffs.size()); ++i) {
            if (i) s += " + ";
            s += "(" + coeffs[i].str() + ")*eps^" + std::to_string(i);
        }
        return s;
    }
};

struct BernsteinFactor {
    Mono ratio;
    int multiplicity;
};

inline EpsPoly eps_from_factors(const std::vector<BernsteinFactor>& fs) {
    EpsPoly p{{RatFunc2(1)}};
    for (auto& f : fs)
        for (int m = 0; m < f.multiplicity; ++m) p = p * EpsPoly{{RatFunc2(1), -f.ratio.rf()}};
    return p;
}

// (1 - rho eps)^{d+1} kills k^d rho^k; the product over the tails is the minimal
// polynomial, normalized to constant term 1
inline std::vector<BernsteinFactor> bernstein_factors(const ShellFn& f) {
    std::map<Mono, int> mult;
    for (const Tail* t : {&f.deep, &f.shallow})
        for (auto& [key, c] : *t) mult[key.ratio] = std::max(mult[key.ratio], key.deg + 1);
    std::vector<BernsteinFactor> out;
    for (auto& [r, m] : mult) out.push_back({r, m});
    return out;
}

inline EpsPoly bernstein_poly(const ShellFn& f) { return eps_from_factors(bernstein_factors(f)); }

// ------------------------------------------------------------------ local functional equation

inline void check_fe_strip(cplx s, cplx mu) {
    if (!(2 * s.real() - 1 < mu.real() && mu.real() < 0.5)) throw std::domain_error("local_fe_check: mu outside 2Re(s)-1 < Re(mu) < 1/2");
}

// gamma(1-mu) gamma(2s-mu) M(f)(2s-mu) as a rational function in T, S
inline RatFunc2 local_fe_rhs(const ShellFn& f, const LocalField& L) {
    RatFunc2 g = gamma_factor(L).rf;
    RatFunc2 g1 = g.subst_t(BigRat(1, L.q), -1, 0);  // mu -> 1 - mu
    RatFunc2 g2 = g.subst_t(1, -1, 2);                // mu -> 2s - mu
    return g1 * g2 * mellin_padic(f, L).subst_t(1, -1, 2);
}

inline bool local_fe_formal(const ShellFn& f, const LocalField& L) {
    return rf_equal(mellin_padic(hankel_padic(f, L), L), local_fe_rhs(f, L));
}

inline double local_fe_check(const ShellFn& f, const LocalField& L, cplx mu, cplx s) {
    require_unramified(L, "local_fe_check");
    check_fe_strip(s, mu);
    cplx lhs = mellin_padic(hankel_padic(f, L), L).eval(double(L.q), s, mu);
    cplx rhs = local_fe_rhs(f, L).eval(double(L.q), s, mu);
    return std::abs(lhs - rhs);
}

// ------------------------------------------------------------------ Bessel kernel

// q^{-k(1-2s)} gamma(2-2s) + gamma(2s) for v(x) = k > 2e (here e = 0)
inline RatFunc2 kernel_padic_smallx(const LocalField& L, int k) {
    require_unramified(L, "kernel_padic_smallx");
    if (k <= 2 * L.e) throw std::domain_error("kernel_padic_smallx: needs v(x) > 2e");
    return RatFunc2::mono(0, -2 * k, LaurentPoly2::rat_pow(BigRat(1, L.q), k)) * gamma_2m2s(L.q) + gamma_2s(L.q);
}

struct KernelPV {
    cplx value;
    double delta = 0;  // |PV(R) - PV(R-2)|
    bool stabilized = true;
};

namespace detail {

inline long long ipow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline long long inv_mod(long long a, long long m) {
    long long g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1) {
        long long t = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - t * a1);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    return ((x % m) + m) % m;
}

// average over units u mod p^M of psi(-p^j u - p^{n-j} x0 / u)
inline cplx shell_average(long p, int j, int n, long long x0, int M) {
    const long long PM = ipow_ll(p, M);
    if (PM > 60000000LL) throw std::domain_error("kernel_padic_numeric: shell modulus too large");
    if (M == 0) return 1.0;
    cplx acc = 0;
    long long cnt = 0;
    for (long long u = 1; u < PM; ++u) {
        if (u % p == 0) continue;
        long long r = 0;
        if (j < 0) {
            long long m1 = ipow_ll(p, -j);
            r += ((-(u % m1)) % m1 + m1) % m1 * (PM / m1);
        }
        if (n - j < 0) {
            long long m2 = ipow_ll(p, j - n);
            long long v = (__int128)(x0 % m2) * inv_mod(u, m2) % m2;
            r += ((m2 - v) % m2) * (PM / m2);
        }
        r %= PM;
        acc += std::polar(1.0, 2 * kPi * double(r) / double(PM));
        ++cnt;
    }
    return acc / double(cnt);
}

}  // namespace detail

// local-constancy modulus of w -> psi(-w - x/w) on the shell v(w) = j when v(x) = n
inline int shell_modulus(int j, int n) { return std::max({0, -j, j - n}); }

namespace detail {

// average over units of psi(a u / p^M) for a unit a: the Ramanujan sum c_{p^M}(a) / phi(p^M)
inline double ramanujan_average(long p, int M) { return M == 0 ? 1.0 : (M == 1 ? -1.0 / double(p - 1) : 0.0); }

}  // namespace detail

// principal value sum over shells |j| <= R of the kernel at x = p^n x0 (x0 a unit,
// known modulo p^m). Each shell is an exact average of p^M-th roots of unity: shells
// where one of the two terms is integral reduce to Ramanujan sums, the others are
// summed term by term (Kloosterman-type sums). With brute = true every shell is
// summed term by term.
inline KernelPV kernel_padic_numeric(const LocalField& L, int n, long long x0, int m, cplx s, int R, bool self_test = true,
                                     bool brute = false) {
    require_unramified(L, "kernel_padic_numeric");
    if (!is_prime(L.q)) throw std::invalid_argument("kernel_padic_numeric: q must be prime");
    const long p = L.q;
    if (x0 % p == 0) throw std::invalid_argument("kernel_padic_numeric: x0 must be a unit");
    auto shell = [&](int j) -> cplx {
        const int M = shell_modulus(j, n);
        const bool kloosterman = j < 0 && j > n;
        cplx avg;
        if (kloosterman || brute) {
            if (j - n > m) throw std::domain_error("kernel_padic_numeric: unit residue not known to enough precision");
            avg = detail::shell_average(p, j, n, x0, M);
            if (self_test && detail::ipow_ll(p, M + 1) <= 200000 && j - n + 1 <= m) {
                cplx fine = detail::shell_average(p, j, n, x0, M + 1);
                if (std::abs(fine - avg) > 1e-11) throw std::logic_error("kernel_padic_numeric: shell sum changed under refinement");
            }
        } else {
            avg = detail::ramanujan_average(p, M);
        }
        return (1.0 - 1.0 / double(p)) * std::exp(-double(j) * (1.0 - 2.0 * s) * std::log(double(p))) * avg;
    };
    cplx inner = 0, full = 0;
    for (int j = -R; j <= R; ++j) {
        cplx c = shell(j);
        full += c;
        if (std::abs(j) <= R - 2) inner += c;
    }
    KernelPV r;
    r.value = full;
    r.delta = std::abs(full - inner);
    r.stabilized = r.delta <= 1e-10;
    return r;
}

// ------------------------------------------------------------------ cosets

// coefficient times the indicator of p^c (1 + p^r O)
struct CosetFn {
    long q = 2;
    int center_valuation = 0;
    int depth = 1;
    RatFunc2 coefficient = RatFunc2(1);
};

struct PadicHankelResult {
    ShellFn exact;                  // exact shells and tails
    std::map<int, cplx> numeric;    // shells filled numerically at a fixed unit part
    bool numeric_mode = false;
    cplx s_numeric = 0;
};

// For q = 2 and depth 1 the coset is a full shell and the result is exact. For odd p
// the deep shells v(x) + c >= 1 are exact (the kernel is radial there); the remaining
// shells are averaged numerically at the given s, for x with the given unit part.
inline PadicHankelResult hankel_padic(const CosetFn& f, const LocalField& L, std::optional<cplx> s_num = std::nullopt,
                                      long long x_unit = 1) {
    require_unramified(L, "hankel_padic");
    if (f.depth < 1) throw std::invalid_argument("CosetFn: depth must be >= 1");
    if (f.depth > 1) throw std::invalid_argument("hankel_padic: coset depth beyond 1 is not supported in exact mode");
    PadicHankelResult res;
    const long q = L.q;
    const int c = f.center_valuation;
    if (q == 2) {
        res.exact = hankel_padic(shell_indicator(q, c, f.coefficient), L);
        return res;
    }
    // deep shells k >= 1 - c: coeff * |p^c|^{2s} q^{-1} (q^{-(k+c)} S^{-2(k+c)} gamma(2-2s) + gamma(2s))
    ShellFn out(q);
    out.lo = 1 - c;
    out.hi = -c;
    RatFunc2 pre = f.coefficient * RatFunc2::mono(0, 2 * c, BigRat(1, q));
    Mono R{BigRat(1, q), 0, -2};
    detail::tail_add(out.deep, TailKey{R, 0}, pre * R.pow(c) * gamma_2m2s(q));
    detail::tail_add(out.deep, TailKey{Mono{}, 0}, pre * gamma_2s(q));
    res.exact = out;
    if (!s_num) return res;
    res.numeric_mode = true;
    res.s_numeric = *s_num;
    const cplx s = *s_num;
    const cplx pref = f.coefficient.eval(double(q), s, 0.0) * std::pow(double(q), -2.0 * double(c) * s) / double(q);
    int quiet = 0;
    for (int k = -c; k >= -c - 12 && quiet < 2; --k) {
        const int n = k + c;                 // valuation of x y
        const int m = std::max(1, -n);       // residue precision needed for the kernel
        const long long PM = detail::ipow_ll(q, m);
        cplx acc = 0;
        long long cnt = 0;
        for (long long u = 1; u < PM; u += q) {  // u = 1 mod p
            acc += kernel_padic_numeric(L, n, (u * (x_unit % PM)) % PM, m, s, std::abs(n) + 4, false).value;
            ++cnt;
        }
        cplx v = pref * acc / double(cnt);
        res.numeric[k] = v;
        quiet = std::abs(v) < 1e-13 ? quiet + 1 : 0;
    }
    return res;
}

}  // namespace vsf
