#pragma once
// Quadrature: adaptive Gauss-Kronrod, double-exponential tails, oscillatory tails with
// epsilon extrapolation, Filon-type Fourier integrals, numeric Fourier/Mellin transforms.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsf/special.hpp"

namespace vsf {

struct QuadResult {
    cplx value = 0;
    double err_estimate = 0;
    int evaluations = 0;
};

struct QuadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecayHint {
    enum Kind { exponential, power } kind = exponential;
    double p = 2;  // exponent for power decay
    static DecayHint exp() { return {exponential, 0}; }
    static DecayHint pow(double p) { return {power, p}; }
};

namespace detail {

struct GK31 {
    std::array<double, 16> x{}, wk{}, wg{};  // wg is zero on Kronrod-only nodes
    GK31() {
        using namespace boost::math::quadrature;
        const auto& kx = gauss_kronrod<double, 31>::abscissa();
        const auto& kw = gauss_kronrod<double, 31>::weights();
        const auto& gx = gauss<double, 15>::abscissa();
        const auto& gw = gauss<double, 15>::weights();
        for (int i = 0; i < 16; ++i) {
            x[i] = kx[i];
            wk[i] = kw[i];
            for (size_t j = 0; j < gx.size(); ++j)
                if (std::abs(gx[j] - kx[i]) < 1e-15) wg[i] = gw[j];
        }
    }
};

inline const GK31& gk31() {
    static const GK31 t;
    return t;
}

struct Panel {
    double a, b;
    cplx val;
    double err, absval;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel gk_panel(F& f, double a, double b, int& nev) {
    const auto& t = gk31();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx f0 = cplx(f(c));
    cplx k = t.wk[0] * f0, g = t.wg[0] * f0;
    double ab = t.wk[0] * std::abs(f0);
    for (int i = 1; i < 16; ++i) {
        cplx u = cplx(f(c - h * t.x[i])), v = cplx(f(c + h * t.x[i]));
        k += t.wk[i] * (u + v);
        g += t.wg[i] * (u + v);
        ab += t.wk[i] * (std::abs(u) + std::abs(v));
    }
    nev += 31;
    return {a, b, k * h, std::abs(k - g) * h, ab * std::abs(h)};
}

}  // namespace detail

// Globally adaptive G15/K31 with bisection of the worst panel. tol is absolute.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double tol, int max_panels = 20000) {
    if (!(a < b)) {
        if (a == b) return {};
        throw std::invalid_argument("integrate_adaptive: need a < b");
    }
    QuadResult r;
    std::priority_queue<detail::Panel> heap;
    heap.push(detail::gk_panel(f, a, b, r.evaluations));
    cplx total = heap.top().val;
    double err = heap.top().err, absint = heap.top().absval;
    int n = 1;
    while (true) {
        const double floor = 50 * std::numeric_limits<double>::epsilon() * absint;
        if (err <= std::max(tol, floor)) break;
        if (n >= max_panels) throw QuadError("integrate_adaptive: maximum subdivision count exceeded");
        detail::Panel p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) throw QuadError("integrate_adaptive: maximum subdivision depth exceeded");
        auto l = detail::gk_panel(f, p.a, m, r.evaluations), rr = detail::gk_panel(f, m, p.b, r.evaluations);
        total += l.val + rr.val - p.val;
        err += l.err + rr.err - p.err;
        absint += l.absval + rr.absval - p.absval;
        heap.push(l);
        heap.push(rr);
        ++n;
    }
    // resum for a deterministic result independent of the update history
    total = 0;
    err = 0;
    std::vector<detail::Panel> ps;
    while (!heap.empty()) {
        ps.push_back(heap.top());
        heap.pop();
    }
    std::sort(ps.begin(), ps.end(), [](auto& x, auto& y) { return x.a < y.a; });
    for (auto& p : ps) {
        total += p.val;
        err += p.err;
    }
    r.value = total;
    r.err_estimate = err;
    return r;
}

// tanh-sinh on [a, b]; f receives (x, distance to nearest endpoint) so endpoint
// singularities can be evaluated without cancellation.
template <class F>
QuadResult integrate_tanh_sinh(F&& f, double a, double b, double tol, int max_levels = 10) {
    QuadResult r;
    const double hw = 0.5 * (b - a), tmax = 5.0;
    auto term = [&](double t) -> cplx {
        double u = 0.5 * kPi * std::sinh(t);
        double w = 0.5 * kPi * std::cosh(t) / (std::cosh(u) * std::cosh(u));
        double d = hw / (std::exp(2 * std::abs(u)) + 1) * 2;  // distance to the near endpoint
        if (d <= 0) return 0;
        double x = t < 0 ? a + d : b - d;
        ++r.evaluations;
        return cplx(f(x, d)) * (w * hw);
    };
    double h = 0.5;
    cplx sum = term(0);
    for (double t = h; t <= tmax; t += h) sum += term(t) + term(-t);
    cplx prev = sum * h;
    for (int lev = 1; lev <= max_levels; ++lev) {
        h *= 0.5;
        for (double t = h; t <= tmax; t += 2 * h) sum += term(t) + term(-t);
        cplx cur = sum * h;
        double e = std::abs(cur - prev);
        if (lev >= 3 && e <= std::max(tol, 1e-15 * std::abs(cur))) {
            r.value = cur;
            r.err_estimate = e;
            return r;
        }
        prev = cur;
    }
    throw QuadError("integrate_tanh_sinh: no convergence");
}

namespace detail {

// compare |f| at a + X and a + 2X against the hinted decay
template <class F>
bool decay_consistent(F& f, double a, DecayHint hint) {
    const double X = 200 * std::max(1.0, std::abs(a));
    double f1 = std::abs(cplx(f(a + X))), f2 = std::abs(cplx(f(a + 2 * X)));
    if (f2 < 1e-250) return true;
    double bound = hint.kind == DecayHint::power ? 1.5 * std::pow(2.0, -hint.p) : 1e-6;
    return f2 <= bound * f1;
}

}  // namespace detail

// integral over [a, inf) by a double-exponential rule after substitution:
// exp-sinh for exponential decay, x = a + c(1-t)/t with tanh-sinh for power decay
template <class F>
QuadResult integrate_tail(F&& f, double a, double tol, DecayHint hint = DecayHint::exp(), int max_levels = 10) {
    if (hint.kind == DecayHint::power && !(hint.p > 1)) throw std::invalid_argument("integrate_tail: power decay needs p > 1");
    if (!detail::decay_consistent(f, a, hint)) throw QuadError("integrate_tail: nonconvergence; empirical decay contradicts the hint");
    QuadResult r;
    if (hint.kind == DecayHint::power) {
        const double c = std::max(1.0, std::abs(a));
        auto g = [&](double t, double d) -> cplx {
            // t in (0, 1]; near 0 use the exact endpoint distance
            double tt = t < 0.5 ? d : t;
            double x = a + c * (1 - tt) / tt;
            if (!std::isfinite(x)) return 0;
            return cplx(f(x)) * (c / (tt * tt));
        };
        return integrate_tanh_sinh(g, 0.0, 1.0, tol, max_levels);
    }
    auto term = [&](double t) -> cplx {
        double u = std::exp(0.5 * kPi * std::sinh(t));
        double w = u * 0.5 * kPi * std::cosh(t);
        if (!std::isfinite(u) || !std::isfinite(w) || u == 0) return 0;
        ++r.evaluations;
        cplx v = cplx(f(a + u));
        return v == 0.0 ? cplx(0) : v * w;
    };
    const double tmax = 4.5;
    double h = 0.5;
    cplx sum = term(0);
    for (double t = h; t <= tmax; t += h) sum += term(t) + term(-t);
    cplx prev = sum * h;
    for (int lev = 1; lev <= max_levels; ++lev) {
        h *= 0.5;
        for (double t = h; t <= tmax; t += 2 * h) sum += term(t) + term(-t);
        cplx cur = sum * h;
        double e = std::abs(cur - prev);
        if (lev >= 3 && e <= std::max(tol, 1e-15 * std::abs(cur))) {
            r.value = cur;
            r.err_estimate = e;
            return r;
        }
        prev = cur;
    }
    throw QuadError("integrate_tail: nonconvergence");
}

// Wynn epsilon extrapolation of a sequence of partial sums
inline cplx wynn_epsilon(const std::vector<cplx>& s) {
    const size_t n = s.size();
    if (n < 3) return s.back();
    std::vector<cplx> prev(n + 1, 0.0), cur(s.begin(), s.end());
    cplx best = s.back();
    for (size_t k = 1; k < n; ++k) {
        std::vector<cplx> next(n - k);
        bool ok = true;
        for (size_t j = 0; j + k < n; ++j) {
            cplx d = cur[j + 1] - cur[j];
            if (std::abs(d) < 1e-300) {
                ok = false;
                break;
            }
            next[j] = prev[j + 1] + 1.0 / d;
        }
        if (!ok) break;
        prev = cur;
        cur = next;
        if (k % 2 == 0) best = cur.back();
    }
    return best;
}

// integral over [a, inf) of a slowly decaying integrand oscillating with the given
// half-period: partial sums over half-periods, accelerated by the epsilon algorithm
template <class F>
QuadResult integrate_osc_tail(F&& f, double a, double half_period, double tol, int max_pieces = 400) {
    QuadResult r;
    std::vector<cplx> sums;
    cplx s = 0, last = 0, last2 = 0;
    for (int k = 0; k < max_pieces; ++k) {
        auto p = integrate_adaptive(f, a + k * half_period, a + (k + 1) * half_period, 0.05 * tol);
        r.evaluations += p.evaluations;
        s += p.value;
        sums.push_back(s);
        if (sums.size() > 40) sums.erase(sums.begin());
        if (k >= 8) {
            cplx e = wynn_epsilon(sums);
            double d = std::max(std::abs(e - last), std::abs(e - last2));
            last2 = last;
            last = e;
            if (k >= 10 && d <= tol) {
                r.value = e;
                r.err_estimate = d;
                return r;
            }
        }
    }
    throw QuadError("integrate_osc_tail: no convergence");
}

// ---------------------------------------------------------------- test functions

struct TestFn {
    enum class Family { MollifierBump, GaussianWindow, BasicTimesPoly, Derived };
    Family family = Family::Derived;
    std::vector<double> params;
    std::function<double(double)> eval, eval_d1, eval_d2;
    double a = 0, b = 0;  // support
    std::string name;

    bool two_sided() const { return a < 0 && b > 0; }
    double operator()(double x) const { return (x < a || x > b) ? 0.0 : eval(x); }
    double d1(double x) const { return (x < a || x > b) ? 0.0 : eval_d1(x); }
    double d2(double x) const { return (x < a || x > b) ? 0.0 : eval_d2(x); }
};

namespace detail {

inline double fd_richardson(const std::function<double(double)>& f, double x, double h) {
    auto D = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2 * hh); };
    return (4 * D(0.5 * h) - D(h)) / 3;
}

// analytic derivatives must agree with finite differences at 5 random interior points
inline void check_derivatives(const TestFn& t) {
    std::mt19937 rng(20240611);
    double lo = t.a + 0.1 * (t.b - t.a), hi = t.b - 0.1 * (t.b - t.a);
    std::uniform_real_distribution<double> U(lo, hi);
    const double h = 1e-4 * (t.b - t.a);
    std::function<double(double)> d1 = t.eval_d1;
    for (int i = 0; i < 5; ++i) {
        double x = U(rng);
        if (t.two_sided() && std::abs(x) < 4 * h) x += 8 * h;
        double e1 = std::abs(fd_richardson(t.eval, x, h) - t.eval_d1(x));
        double e2 = std::abs(fd_richardson(d1, x, h) - t.eval_d2(x));
        if (e1 > 1e-6 * (1 + std::abs(t.eval_d1(x))) || e2 > 1e-6 * (1 + std::abs(t.eval_d2(x))))
            throw std::logic_error("TestFn " + t.name + ": analytic derivative disagrees with finite differences");
    }
}

}  // namespace detail

// exp(-1/(1-t^2)) with t the affine image of [a, b] onto [-1, 1]
inline TestFn mollifier_bump(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("mollifier_bump: need a < b");
    TestFn t;
    t.family = TestFn::Family::MollifierBump;
    t.params = {a, b};
    t.a = a;
    t.b = b;
    t.name = "MollifierBump(" + std::to_string(a) + "," + std::to_string(b) + ")";
    const double c = 0.5 * (a + b), k = 2 / (b - a);
    t.eval = [=](double x) {
        double u = k * (x - c), d = 1 - u * u;
        return d <= 0 ? 0.0 : std::exp(-1 / d);
    };
    t.eval_d1 = [=](double x) {
        double u = k * (x - c), d = 1 - u * u;
        return d <= 0 ? 0.0 : std::exp(-1 / d) * (-2 * u / (d * d)) * k;
    };
    t.eval_d2 = [=](double x) {
        double u = k * (x - c), d = 1 - u * u;
        if (d <= 0) return 0.0;
        double g1 = -2 * u / (d * d), g2 = -2 / (d * d) - 8 * u * u / (d * d * d);
        return std::exp(-1 / d) * (g2 + g1 * g1) * k * k;
    };
    detail::check_derivatives(t);
    return t;
}

// y^deg exp(-pi y^2), y = (x - center)/width, truncated where it is below 1e-60
inline TestFn gaussian_window(double center, double width, int deg) {
    if (!(width > 0) || deg < 0) throw std::invalid_argument("gaussian_window: bad parameters");
    TestFn t;
    t.family = TestFn::Family::GaussianWindow;
    t.params = {center, width, double(deg)};
    t.a = center - 7 * width;
    t.b = center + 7 * width;
    t.name = "GaussianWindow(" + std::to_string(center) + "," + std::to_string(width) + "," + std::to_string(deg) + ")";
    auto ip = [](double y, int k) { return k < 0 ? 0.0 : std::pow(y, k); };
    t.eval = [=](double x) {
        double y = (x - center) / width;
        return ip(y, deg) * std::exp(-kPi * y * y);
    };
    t.eval_d1 = [=](double x) {
        double y = (x - center) / width;
        return (deg * ip(y, deg - 1) - 2 * kPi * ip(y, deg + 1)) * std::exp(-kPi * y * y) / width;
    };
    t.eval_d2 = [=](double x) {
        double y = (x - center) / width;
        double p = deg * (deg - 1) * ip(y, deg - 2) - 2 * kPi * (2 * deg + 1) * ip(y, deg) + 4 * kPi * kPi * ip(y, deg + 2);
        return p * std::exp(-kPi * y * y) / (width * width);
    };
    detail::check_derivatives(t);
    return t;
}

// x^n times the real basic function 2|x|^nu K_nu(2 pi |x|), nu = 1/2 - s; this
// normalization equals zeta_R(2-2s) times the Fourier transform of (1+t^2)^(s-1)
inline TestFn basic_times_poly(int n, double s) {
    const double nu = 0.5 - s;
    if (n < 0 || !(nu >= 0 && nu < 1)) throw std::invalid_argument("basic_times_poly: need n >= 0 and 0 < s <= 1/2");
    TestFn t;
    t.family = TestFn::Family::BasicTimesPoly;
    t.params = {double(n), s};
    t.a = -7.5;
    t.b = 7.5;
    t.name = "BasicTimesPoly(" + std::to_string(n) + "," + std::to_string(s) + ")";
    const double c = 2 * std::pow(2 * kPi, -nu);
    // B(z) = c z^nu K_nu(z) with z = 2 pi |x|; dB/dz = -c z^nu K_{nu-1}
    auto B0 = [=](double z) { return c * std::pow(z, nu) * bessel_k(nu, z); };
    auto B1 = [=](double z) { return -c * std::pow(z, nu) * bessel_k(nu - 1, z); };
    auto B2 = [=](double z) {
        double km1 = bessel_k(nu - 1, z), km2 = bessel_k(nu, z) - 2 * (nu - 1) / z * km1;
        return -c * (std::pow(z, nu - 1) * km1 - std::pow(z, nu) * km2);
    };
    auto L = [=](double x, int k) {
        double z = 2 * kPi * std::abs(x), sg = x < 0 ? -1 : 1;
        if (k == 0) return B0(z);
        if (k == 1) return B1(z) * 2 * kPi * sg;
        return B2(z) * 4 * kPi * kPi;
    };
    auto xp = [](double x, int k) { return k < 0 ? 0.0 : std::pow(x, k); };
    t.eval = [=](double x) {
        if (x == 0) {
            if (n > 0) return 0.0;
            return nu == 0 ? HUGE_VAL : gamma_fn(nu) * std::pow(kPi, -nu);
        }
        return xp(x, n) * L(x, 0);
    };
    t.eval_d1 = [=](double x) { return n * xp(x, n - 1) * L(x, 0) + xp(x, n) * L(x, 1); };
    t.eval_d2 = [=](double x) {
        return n * (n - 1) * xp(x, n - 2) * L(x, 0) + 2 * n * xp(x, n - 1) * L(x, 1) + xp(x, n) * L(x, 2);
    };
    detail::check_derivatives(t);
    return t;
}

// a test function built from another by a pointwise rule, without derivative fields
inline TestFn derived_fn(std::string name, double a, double b, std::function<double(double)> f) {
    TestFn t;
    t.family = TestFn::Family::Derived;
    t.a = a;
    t.b = b;
    t.name = std::move(name);
    t.eval = std::move(f);
    return t;
}

// theta phi = x phi'(x)
inline TestFn theta_derivative(const TestFn& phi) {
    if (!phi.eval_d1) throw std::invalid_argument("theta_derivative: no derivative available");
    auto d = phi.eval_d1;
    return derived_fn("x*d/dx " + phi.name, phi.a, phi.b, [d](double x) { return x * d(x); });
}

// ------------------------------------------------------------------ transforms

namespace detail {

inline const std::vector<std::pair<double, double>>& gauss_legendre(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> nw(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5)), dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1, p1 = x;
            dp = m * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        nw[i] = {-x, w};
        nw[m - 1 - i] = {x, w};
    }
    return cache.emplace(m, std::move(nw)).first->second;
}

// Filon-type rule: phi is replaced on each panel by its Chebyshev interpolant, and the
// interpolant times exp(i w t) is integrated by a Gauss rule resolving the oscillation
struct FilonFourier {
    const TestFn& phi;
    double xi, tol, total_len;
    static constexpr int N = 32;
    int panels = 0;

    cplx panel(double a, double b) const {
        std::array<double, N + 1> f{}, c{};
        const double m = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j <= N; ++j) f[j] = phi(m + h * std::cos(kPi * j / N));
        for (int k = 0; k <= N; ++k) {
            double s = 0.5 * (f[0] + ((k & 1) ? -f[N] : f[N]));
            for (int j = 1; j < N; ++j) s += f[j] * std::cos(kPi * j * k / N);
            c[k] = s * 2 / N;
        }
        c[0] *= 0.5;
        c[N] *= 0.5;
        const double w = 2 * kPi * xi * h;
        const int M = N + int(std::ceil(std::abs(w))) + 24;
        const auto& gl = gauss_legendre(M);
        cplx acc = 0;
        for (auto [t, wt] : gl) {
            // Clenshaw
            double b1 = 0, b2 = 0;
            for (int k = N; k >= 1; --k) {
                double b0 = 2 * t * b1 - b2 + c[k];
                b2 = b1;
                b1 = b0;
            }
            double p = t * b1 - b2 + c[0];
            acc += wt * p * std::polar(1.0, w * t);
        }
        return acc * h * std::polar(1.0, 2 * kPi * xi * m);
    }

    double tail(double a, double b) const {
        std::array<double, N + 1> f{};
        const double m = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j <= N; ++j) f[j] = phi(m + h * std::cos(kPi * j / N));
        double t = 0;
        for (int k = N - 2; k <= N; ++k) {
            double s = 0.5 * (f[0] + ((k & 1) ? -f[N] : f[N]));
            for (int j = 1; j < N; ++j) s += f[j] * std::cos(kPi * j * k / N);
            t += std::abs(s * 2 / N);
        }
        return t;
    }

    cplx run(double a, double b, int depth = 0) {
        const double hmax = 20.0 / (2 * kPi * std::abs(xi));
        const double len = b - a;
        bool split = len > 2 * hmax;
        if (!split) {
            double e = tail(a, b) * len;
            split = e > std::max(tol * len / total_len, 1e-3 * tol);
        }
        if (split && depth < 200) {
            double m = 0.5 * (a + b);
            return run(a, m, depth + 1) + run(m, b, depth + 1);
        }
        if (split) throw QuadError("fourier_num: panel refinement did not converge");
        ++panels;
        if (panels > 200000) throw QuadError("fourier_num: too many panels");
        return panel(a, b);
    }
};

}  // namespace detail

// transform(phi)(xi) = int phi(x) exp(2 pi i xi x) dx
inline cplx fourier_num(const TestFn& phi, double xi, double tol = 1e-10) {
    const double L = phi.b - phi.a;
    std::vector<double> cuts = {phi.a};
    if (phi.two_sided()) cuts.push_back(0.0);
    cuts.push_back(phi.b);
    cplx sum = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (std::abs(xi) * L <= 20) {
            auto f = [&](double x) { return phi(x) * std::polar(1.0, 2 * kPi * xi * x); };
            sum += integrate_adaptive(f, a, b, tol / cuts.size()).value;
        } else {
            detail::FilonFourier ff{phi, xi, tol / cuts.size(), L};
            sum += ff.run(a, b);
        }
    }
    return sum;
}

enum class Parity { even, odd };

// int over R^x of sign(x)^parity |x|^mu phi(x) dx/|x|
inline cplx mellin_num(const TestFn& phi, Parity parity, cplx mu, double tol = 1e-10) {
    const bool touches_zero = phi.a <= 0 && phi.b >= 0;
    if (touches_zero && mu.real() <= 0) {
        double v0 = std::abs(phi.eval(0.0));
        if (v0 > 0 || !std::isfinite(v0)) throw std::domain_error("mellin_num: divergent at 0 (phi(0) != 0, Re(mu) <= 0)");
    }
    auto side = [&](double lo, double hi, double sgn) -> cplx {
        // integrate phi(sgn*y) y^(mu-1) over y in [lo, hi], lo >= 0
        if (hi <= lo) return 0;
        if (lo > 0) {
            auto f = [&](double y) { return phi(sgn * y) * std::pow(cplx(y), mu - 1.0); };
            return integrate_adaptive(f, lo, hi, tol / 4).value;
        }
        auto f = [&](double y, double) -> cplx { return y <= 0 ? cplx(0) : phi(sgn * y) * std::exp((mu - 1.0) * std::log(y)); };
        // split so the tanh-sinh rule sees the singular endpoint and a smooth remainder
        double m = std::min(hi, 1.0);
        cplx v = integrate_tanh_sinh(f, 0.0, m, tol / 4).value;
        if (hi > m) {
            auto g = [&](double y) { return phi(sgn * y) * std::pow(cplx(y), mu - 1.0); };
            v += integrate_adaptive(g, m, hi, tol / 4).value;
        }
        return v;
    };
    cplx pos = side(std::max(phi.a, 0.0), phi.b, 1.0);
    cplx neg = side(std::max(-phi.b, 0.0), -phi.a, -1.0);
    return pos + (parity == Parity::odd ? -neg : neg);
}

}  // namespace vsf
