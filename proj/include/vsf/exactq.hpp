#pragma once
// Exact rational functions in two formal variables T = q^(-mu), S = q^(-s).

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vsf {

using BigRat = mpq_class;
using cplx = std::complex<double>;

class LaurentPoly2 {
public:
    using Exp = std::pair<int, int>;  // (power of T, power of S)
    using Map = std::map<Exp, BigRat>;

    LaurentPoly2() = default;
    LaurentPoly2(const BigRat& c) { add_term(0, 0, c); }
    LaurentPoly2(long c) { add_term(0, 0, BigRat(c)); }

    static LaurentPoly2 mono(int i, int j, const BigRat& c = 1) {
        LaurentPoly2 p;
        p.add_term(i, j, c);
        return p;
    }
    static LaurentPoly2 T(int i = 1) { return mono(i, 0); }
    static LaurentPoly2 S(int j = 1) { return mono(0, j); }

    void add_term(int i, int j, BigRat c) {
        c.canonicalize();
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(Exp{i, j}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int min_t() const { return fold([](int a, Exp e) { return std::min(a, e.first); }, 1 << 30); }
    int max_t() const { return fold([](int a, Exp e) { return std::max(a, e.first); }, -(1 << 30)); }
    int min_s() const { return fold([](int a, Exp e) { return std::min(a, e.second); }, 1 << 30); }
    int max_s() const { return fold([](int a, Exp e) { return std::max(a, e.second); }, -(1 << 30)); }

    LaurentPoly2 shifted(int di, int dj) const {
        LaurentPoly2 r;
        for (auto& [e, c] : terms_) r.terms_.emplace(Exp{e.first + di, e.second + dj}, c);
        return r;
    }

    LaurentPoly2 operator-() const {
        LaurentPoly2 r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    LaurentPoly2& operator+=(const LaurentPoly2& o) {
        for (auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
        return *this;
    }
    LaurentPoly2& operator-=(const LaurentPoly2& o) {
        for (auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
        return *this;
    }
    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
        LaurentPoly2 r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }
    LaurentPoly2 scaled(const BigRat& c) const {
        if (c == 0) return {};
        LaurentPoly2 r = *this;
        for (auto& [e, v] : r.terms_) v *= c;
        return r;
    }
    friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) { return a.terms_ == b.terms_; }

    // T -> c*T^a*S^b; c must be nonzero when negative powers of T occur
    LaurentPoly2 subst_t(const BigRat& c, int a, int b) const {
        LaurentPoly2 r;
        for (auto& [e, v] : terms_) r.add_term(a * e.first, b * e.first + e.second, v * rat_pow(c, e.first));
        return r;
    }
    LaurentPoly2 subst_s(const BigRat& c, int a, int b) const {
        LaurentPoly2 r;
        for (auto& [e, v] : terms_) r.add_term(e.first + a * e.second, b * e.second, v * rat_pow(c, e.second));
        return r;
    }
    LaurentPoly2 swap_vars() const {
        LaurentPoly2 r;
        for (auto& [e, v] : terms_) r.terms_.emplace(Exp{e.second, e.first}, v);
        return r;
    }

    // value at T = q^-mu, S = q^-s with Kahan-compensated summation
    cplx eval(double q, cplx s, cplx mu) const {
        const double lq = std::log(q);
        cplx sum = 0, comp = 0;
        for (auto& [e, c] : terms_) {
            cplx term = c.get_d() * std::exp(-(double(e.first) * mu + double(e.second) * s) * lq);
            cplx y = term - comp;
            cplx t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c.get_str() << "*T^" << e.first << "*S^" << e.second;
        }
        return os.str();
    }

    static BigRat rat_pow(const BigRat& c, int k) {
        BigRat r = 1, b = c;
        if (k < 0) {
            if (c == 0) throw std::domain_error("zero to a negative power");
            b = 1 / c;
            k = -k;
        }
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

private:
    template <class F>
    int fold(F f, int init) const {
        for (auto& [e, c] : terms_) init = f(init, e);
        return init;
    }
    Map terms_;
};

namespace detail {

// dense polynomial in S over Z, index = degree
using UPoly = std::vector<mpz_class>;

inline void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline UPoly u_sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}
inline UPoly u_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}
inline mpz_class u_icont(const UPoly& p) {
    mpz_class g = 0;
    for (auto& c : p) g = gcd(g, c);
    return g;
}
inline UPoly u_prim(UPoly p) {
    trim(p);
    if (p.empty()) return p;
    mpz_class g = u_icont(p);
    if (p.back() < 0) g = -g;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}
// pseudo-remainder in Z[S]
inline UPoly u_prem(UPoly a, const UPoly& b) {
    trim(a);
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t d = a.size() - b.size();
        mpz_class la = a.back();
        for (auto& c : a) c *= b.back();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + d] -= la * b[i];
        trim(a);
    }
    return a;
}
// primitive gcd with positive leading coefficient
inline UPoly u_gcd(UPoly a, UPoly b) {
    a = u_prim(a);
    b = u_prim(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        UPoly r = u_prem(a, b);
        a = std::move(b);
        b = u_prim(r);
    }
    return a;
}
// exact quotient a / b in Z[S]; throws if b does not divide a
inline UPoly u_exact_div(UPoly a, const UPoly& b) {
    trim(a);
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::logic_error("inexact univariate division");
    UPoly q(a.size() - b.size() + 1);
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t d = a.size() - b.size();
        if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t()))
            throw std::logic_error("inexact univariate division");
        mpz_class f = a.back() / b.back();
        q[d] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + d] -= f * b[i];
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("inexact univariate division");
    trim(q);
    return q;
}

// polynomial in T with coefficients in Z[S]; index = T-degree
using BPoly = std::vector<UPoly>;

inline void trim(BPoly& p) {
    while (!p.empty() && p.back().empty()) p.pop_back();
}
inline mpz_class den_lcm(const LaurentPoly2& p, mpz_class l = 1) {
    for (auto& [e, c] : p.terms()) l = lcm(l, c.get_den());
    return l;
}
// l * p * T^-di * S^-dj, where l clears all denominators of p
inline BPoly to_bpoly(const LaurentPoly2& p, int di, int dj, const mpz_class& l) {
    BPoly r;
    for (auto& [e, c] : p.terms()) {
        int i = e.first - di, j = e.second - dj;
        if (i < 0 || j < 0) throw std::logic_error("to_bpoly: negative exponent");
        if (r.size() <= std::size_t(i)) r.resize(i + 1);
        if (r[i].size() <= std::size_t(j)) r[i].resize(j + 1, 0);
        r[i][j] = c.get_num() * (l / c.get_den());
    }
    for (auto& u : r) trim(u);
    trim(r);
    return r;
}
inline LaurentPoly2 from_bpoly(const BPoly& p) {
    LaurentPoly2 r;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p[i].size(); ++j) r.add_term(int(i), int(j), BigRat(p[i][j]));
    return r;
}
// content in Z[S], including the integer content
inline UPoly content(const BPoly& p) {
    UPoly g;
    mpz_class ic = 0;
    for (auto& c : p)
        if (!c.empty()) {
            g = g.empty() ? u_prim(c) : u_gcd(g, c);
            ic = gcd(ic, u_icont(c));
        }
    for (auto& c : g) c *= ic;
    return g;
}
inline BPoly div_by_u(const BPoly& p, const UPoly& c) {
    BPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p[i].empty()) r[i] = u_exact_div(p[i], c);
    trim(r);
    return r;
}
inline BPoly prim_part(const BPoly& p) {
    if (p.empty()) return p;
    return div_by_u(p, content(p));
}
// pseudo-remainder of a by b in T
inline BPoly prem(BPoly a, const BPoly& b) {
    const UPoly& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t d = a.size() - b.size();
        UPoly la = a.back();
        for (auto& c : a) c = u_mul(c, lb);
        for (std::size_t i = 0; i < b.size(); ++i) a[i + d] = u_sub(a[i + d], u_mul(la, b[i]));
        trim(a);
    }
    return a;
}
// gcd in Z[S][T], primitive over Z
inline BPoly b_gcd(BPoly a, BPoly b) {
    trim(a);
    trim(b);
    if (a.empty()) return prim_part(b);
    if (b.empty()) return prim_part(a);
    UPoly c = u_gcd(content(a), content(b));
    a = prim_part(a);
    b = prim_part(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        BPoly r = prem(a, b);
        a = std::move(b);
        b = prim_part(r);
    }
    a = prim_part(a);
    for (auto& u : a) u = u_mul(u, c);
    return a;
}
// exact quotient a / b in Z[S][T]
inline BPoly b_exact_div(BPoly a, const BPoly& b) {
    trim(a);
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::logic_error("inexact bivariate division");
    BPoly q(a.size() - b.size() + 1);
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t d = a.size() - b.size();
        UPoly f = u_exact_div(a.back(), b.back());
        q[d] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + d] = u_sub(a[i + d], u_mul(f, b[i]));
        if (!a.back().empty()) throw std::logic_error("inexact bivariate division");
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("inexact bivariate division");
    trim(q);
    return q;
}

}  // namespace detail

class RatFunc2 {
public:
    RatFunc2() : num_(), den_(1) {}
    RatFunc2(long c) : num_(c), den_(1) {}
    RatFunc2(const BigRat& c) : num_(c), den_(1) {}
    RatFunc2(const LaurentPoly2& p) : num_(p), den_(1) { canonicalize(); }
    RatFunc2(const LaurentPoly2& n, const LaurentPoly2& d) : num_(n), den_(d) {
        if (den_.is_zero()) throw std::domain_error("RatFunc2: zero denominator");
        canonicalize();
    }

    static RatFunc2 T(int i = 1) { return RatFunc2(LaurentPoly2::T(i)); }
    static RatFunc2 S(int j = 1) { return RatFunc2(LaurentPoly2::S(j)); }
    static RatFunc2 mono(int i, int j, const BigRat& c = 1) { return RatFunc2(LaurentPoly2::mono(i, j, c)); }

    const LaurentPoly2& num() const { return num_; }
    const LaurentPoly2& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc2 operator+(const RatFunc2& a, const RatFunc2& b) {
        if (a.den_ == b.den_) return RatFunc2(a.num_ + b.num_, a.den_);
        return RatFunc2(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc2 operator-(const RatFunc2& a, const RatFunc2& b) {
        if (a.den_ == b.den_) return RatFunc2(a.num_ - b.num_, a.den_);
        return RatFunc2(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc2 operator*(const RatFunc2& a, const RatFunc2& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return RatFunc2(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc2 operator/(const RatFunc2& a, const RatFunc2& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc2: division by zero rational function");
        return RatFunc2(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc2 operator-() const {
        RatFunc2 r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc2& operator+=(const RatFunc2& o) { return *this = *this + o; }
    RatFunc2& operator-=(const RatFunc2& o) { return *this = *this - o; }
    RatFunc2& operator*=(const RatFunc2& o) { return *this = *this * o; }
    RatFunc2& operator/=(const RatFunc2& o) { return *this = *this / o; }

    RatFunc2 pow(int k) const {
        if (k < 0) return RatFunc2(1) / pow(-k);
        RatFunc2 r(1), b = *this;
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    // representations are canonical, so equality is structural
    friend bool operator==(const RatFunc2& a, const RatFunc2& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc2 subst_t(const BigRat& c, int a, int b) const { return RatFunc2(num_.subst_t(c, a, b), den_.subst_t(c, a, b)); }
    RatFunc2 subst_s(const BigRat& c, int a, int b) const { return RatFunc2(num_.subst_s(c, a, b), den_.subst_s(c, a, b)); }
    RatFunc2 swap_vars() const { return RatFunc2(num_.swap_vars(), den_.swap_vars()); }

    cplx eval(double q, cplx s, cplx mu, double pole_tol = 1e-12) const {
        cplx d = den_.eval(q, s, mu);
        if (std::abs(d) < pole_tol) throw std::domain_error("RatFunc2: pole at evaluation point");
        return num_.eval(q, s, mu) / d;
    }

    std::string str() const { return num_.str() + " / " + den_.str(); }

    // idempotent normal form: reduced, den shifted to nonnegative exponents with min 0,
    // lowest total-degree (then lexicographically first) denominator term equal to +1
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = LaurentPoly2(1);
            return;
        }
        int dt = std::min(num_.min_t(), den_.min_t()), ds = std::min(num_.min_s(), den_.min_s());
        mpz_class l = detail::den_lcm(den_, detail::den_lcm(num_));
        auto bn = detail::to_bpoly(num_, dt, ds, l);
        auto bd = detail::to_bpoly(den_, dt, ds, l);
        auto g = detail::b_gcd(bn, bd);
        if (!(g.size() == 1 && g[0].size() == 1)) {
            bn = detail::b_exact_div(bn, g);
            bd = detail::b_exact_div(bd, g);
        }
        LaurentPoly2 n = detail::from_bpoly(bn), d = detail::from_bpoly(bd);
        int st = d.min_t(), ss = d.min_s();
        n = n.shifted(-st, -ss);
        d = d.shifted(-st, -ss);
        const std::pair<int, int>* best = nullptr;
        const BigRat* lead = nullptr;
        for (auto& [e, c] : d.terms()) {
            if (!best || e.first + e.second < best->first + best->second) {
                best = &e;
                lead = &c;
            }
        }
        BigRat inv = 1 / *lead;
        num_ = n.scaled(inv);
        den_ = d.scaled(inv);
    }

private:
    LaurentPoly2 num_, den_;
};

enum class RfOp { add, sub, mul, div };

inline RatFunc2 rf_arith(const RatFunc2& a, const RatFunc2& b, RfOp op) {
    switch (op) {
        case RfOp::add: return a + b;
        case RfOp::sub: return a - b;
        case RfOp::mul: return a * b;
        case RfOp::div: return a / b;
    }
    throw std::invalid_argument("rf_arith: bad op");
}
inline bool rf_equal(const RatFunc2& a, const RatFunc2& b) { return (a - b).is_zero(); }
inline cplx rf_eval(const RatFunc2& f, long q, cplx s, cplx mu) { return f.eval(double(q), s, mu); }

}  // namespace vsf
