#pragma once
// Real place: basic function, Bessel kernel, Hankel transform by two routes,
// and numerical checks of the differential and Mellin identities.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsf/quad.hpp"
#include "vsf/special.hpp"

namespace vsf {

struct ArchParams {
    double s = 0.3;  // real; Bessel orders are real in the special module
    double tol = 1e-10;

    ArchParams() = default;
    ArchParams(double s_, double tol_ = 1e-10) : s(s_), tol(tol_) { validate(); }
    void validate() const {
        if (!(s > 0 && s <= 0.5)) throw std::domain_error("ArchParams: need 0 < s <= 1/2");
        if (!(tol > 0)) throw std::invalid_argument("ArchParams: tol must be positive");
    }
};

inline double height_t(double x) { return 1 / std::sqrt(1 + x * x); }

enum class BasicRoute { quadrature, closed_form };

// closed form: |x|^nu K_nu(2 pi |x|), nu = 1/2 - s.
// quadrature: zeta_R(2-2s) int (1+t^2)^(s-1) psi(xt) dt, integrated along Im t = c sgn(x)
// (c = 1/2) so the oscillatory sum does not cancel down to the exponentially small value.
inline cplx basic_arch(double x, const ArchParams& p, BasicRoute route) {
    p.validate();
    if (x == 0) throw std::domain_error("basic_arch: x = 0");
    const double nu = 0.5 - p.s, ax = std::abs(x);
    if (route == BasicRoute::closed_form) return std::pow(ax, nu) * bessel_k(nu, 2 * kPi * ax);
    if (p.s >= 0.5) throw std::domain_error("basic_arch: quadrature route needs s < 1/2");
    const double c = 0.5;
    auto f = [&](double tau) {
        cplx t(tau, c);
        return (std::pow(1.0 + t * t, p.s - 1) * std::exp(cplx(0, 2 * kPi * ax) * t)).real();
    };
    double scale = std::exp(-2 * kPi * ax * c);
    auto r = integrate_osc_tail(f, 0.0, 0.5 / ax, 1e-3 * p.tol * scale);
    return 2 * zeta_real(2 - 2 * p.s) * r.value.real();
}

// the real basic function in the quadrature normalization, as a test function
inline TestFn basic_fn(const ArchParams& p) { return basic_times_poly(0, p.s); }

struct KernelValue {
    double value = 0;
    enum Regime { positive_arg, negative_arg } regime = positive_arg;
    double symmetrized = 0;  // K(a) + K(-a), the kernel of the divisor-sum formulas
};

namespace detail {

// K(a, s) = int_{R^x} |w|^(1-2s) psi(-w - a/w) d^x w
inline double kernel_branch(double a, double s) {
    const double z = 4 * kPi * std::sqrt(std::abs(a)), nu = 1 - 2 * s;
    if (a > 0) {
        if (s == 0.5) return -2 * kPi * bessel_y(0, z);
        return -2 * kPi * std::pow(a, 0.5 - s) * (std::cos(kPi * s) * bessel_j(nu, z) + std::sin(kPi * s) * bessel_y(nu, z));
    }
    if (s == 0.5) return 4 * bessel_k(0, z);
    return 4 * std::pow(-a, 0.5 - s) * std::sin(kPi * s) * bessel_k(nu, z);
}

}  // namespace detail

inline KernelValue kernel_arch(double a, const ArchParams& p) {
    p.validate();
    if (a == 0) throw std::domain_error("kernel_arch: a = 0");
    KernelValue k;
    k.value = detail::kernel_branch(a, p.s);
    k.regime = a > 0 ? KernelValue::positive_arg : KernelValue::negative_arg;
    k.symmetrized = k.value + detail::kernel_branch(-a, p.s);
    return k;
}

// bracket of the divisor-sum transform: a^(s-1/2) (K(a) + K(-a)) for a > 0, any 0 < s < 1
inline double kernel_oppenheim(double a, double s) {
    if (!(a > 0)) throw std::domain_error("kernel_oppenheim: need a > 0");
    if (!(s > 0 && s < 1)) throw std::domain_error("kernel_oppenheim: need 0 < s < 1");
    const double z = 4 * kPi * std::sqrt(a), nu = 1 - 2 * s;
    if (s == 0.5) return 4 * bessel_k(0, z) - 2 * kPi * bessel_y(0, z);
    return -2 * kPi * (std::cos(kPi * s) * bessel_j(nu, z) + std::sin(kPi * s) * bessel_y(nu, z)) +
           4 * std::sin(kPi * s) * bessel_k(nu, z);
}

namespace detail {

// int over |y| in [lo, hi] (lo >= 0) on the side sg of g(y) * Kern(x y), panels equally
// spaced in sqrt|y| so each carries about half an oscillation of the Bessel phase
template <class G, class Kern>
cplx kernel_side_integral(G&& g, Kern&& kern, double x, double lo, double hi, double sg, double tol) {
    if (!(hi > lo)) return 0;
    const double rlo = std::sqrt(lo), rhi = std::sqrt(hi);
    const double phase = 4 * kPi * std::sqrt(std::abs(x)) * (rhi - rlo);
    const int n = std::max(1, int(std::ceil(phase / kPi)));
    cplx sum = 0;
    for (int i = 0; i < n; ++i) {
        double a = std::pow(rlo + i * (rhi - rlo) / n, 2), b = std::pow(rlo + (i + 1) * (rhi - rlo) / n, 2);
        if (i == n - 1) b = hi;
        if (a == 0) {
            auto f = [&](double y, double d) -> double {
                double yy = y < 0.5 * b ? d : y;
                return yy <= 0 ? 0.0 : g(sg * yy) * kern(x * sg * yy);
            };
            sum += integrate_tanh_sinh(f, 0.0, b, tol / n).value;
        } else {
            auto f = [&](double y) { return g(sg * y) * kern(x * sg * y); };
            sum += integrate_adaptive(f, a, b, tol / n).value;
        }
    }
    return sum;
}

}  // namespace detail

// H_s phi(x) = int |y|^(2s-1) phi(y) K(x y) dy
inline cplx hankel_kernel(const TestFn& phi, double x, const ArchParams& p) {
    p.validate();
    if (x == 0) throw std::domain_error("hankel_kernel: x = 0");
    const double s = p.s;
    auto g = [&](double y) { return std::pow(std::abs(y), 2 * s - 1) * phi(y); };
    auto k = [&](double a) { return detail::kernel_branch(a, s); };
    cplx v = 0;
    if (phi.b > 0) v += detail::kernel_side_integral(g, k, x, std::max(phi.a, 0.0), phi.b, 1.0, 0.5 * p.tol);
    if (phi.a < 0) v += detail::kernel_side_integral(g, k, x, std::max(-phi.b, 0.0), -phi.a, -1.0, 0.5 * p.tol);
    return v;
}

// divisor-sum transform int_0^inf phi(y) kernel_oppenheim(x y) dy, phi supported in (0, inf)
inline double oppenheim_transform(const TestFn& phi, double x, double s, double tol) {
    if (!(phi.a >= 0)) throw std::invalid_argument("oppenheim_transform: phi must be supported in (0, inf)");
    auto g = [&](double y) { return phi(y); };
    auto k = [&](double a) { return kernel_oppenheim(a, s); };
    return detail::kernel_side_integral(g, k, x, phi.a, phi.b, 1.0, tol).real();
}

// H_s phi(u) = F(|x|^(2s-2) F(phi)(1/x))(u): inner transform by fourier_num, outer integral
// split at |x| = 1; dyadic panels towards 0 and an accelerated oscillatory tail beyond 1
inline cplx hankel_fourier(const TestFn& phi, double u, const ArchParams& p, std::vector<std::string>* warnings = nullptr) {
    p.validate();
    const double s = p.s, tol = p.tol;
    if (warnings && s > 0.45) warnings->push_back("hankel_fourier: s within 0.05 of 1/2, outer tail converges slowly");
    auto G = [&](double x) -> cplx {
        double ax = std::abs(x), w = std::pow(ax, 2 * s - 2);
        return w * fourier_num(phi, 1 / x, 0.01 * tol / std::max(1.0, w));
    };
    auto both = [&](double x) -> cplx {
        return G(x) * std::polar(1.0, 2 * kPi * u * x) + G(-x) * std::polar(1.0, -2 * kPi * u * x);
    };
    cplx near = 0;
    for (int k = 0, quiet = 0; k < 40 && quiet < 3; ++k) {
        cplx r = integrate_adaptive(both, std::ldexp(1.0, -k - 1), std::ldexp(1.0, -k), 0.02 * tol, 200000).value;
        near += r;
        quiet = std::abs(r) < 0.01 * tol ? quiet + 1 : 0;
    }
    cplx far;
    if (u == 0) {
        if (s >= 0.5) throw std::domain_error("hankel_fourier: u = 0 diverges at s = 1/2");
        far = integrate_tail(both, 1.0, 0.5 * tol, DecayHint::pow(2 - 2 * s)).value;
    } else {
        far = integrate_osc_tail(both, 1.0, 0.5 / std::abs(u), 0.5 * tol, 4000).value;
    }
    return near + far;
}

namespace detail {

// h = 1e-4 x stencils on L(x) = basic closed form; order 2 or 4
inline void basic_derivs(double x, const ArchParams& p, double hrel, int order, double& f0, double& f1, double& f2) {
    auto L = [&](double t) { return basic_arch(t, p, BasicRoute::closed_form).real(); };
    const double h = hrel * x;
    f0 = L(x);
    double p1 = L(x + h), m1 = L(x - h);
    if (order == 2) {
        f1 = (p1 - m1) / (2 * h);
        f2 = (p1 - 2 * f0 + m1) / (h * h);
        return;
    }
    double p2 = L(x + 2 * h), m2 = L(x - 2 * h);
    f1 = (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h);
    f2 = (-p2 + 16 * p1 - 30 * f0 + 16 * m1 - m2) / (12 * h * h);
}

}  // namespace detail

// |theta^2 L + (2s-1) theta L - 4 pi^2 x^2 L|, theta = x d/dx
inline double ode_residual(double x, const ArchParams& p, double hrel = 1e-4, int order = 4) {
    if (!(x > 0)) throw std::domain_error("ode_residual: need x > 0");
    double f0, f1, f2;
    detail::basic_derivs(x, p, hrel, order, f0, f1, f2);
    double th = x * f1, th2 = x * f1 + x * x * f2;
    return std::abs(th2 + (2 * p.s - 1) * th - 4 * kPi * kPi * x * x * f0);
}

// |H(theta phi)(u) + 2s H phi(u) + theta(H phi)(u)|, theta(H phi) by central differences
inline double deriv_commutation_residual(const TestFn& phi, double u, const ArchParams& p, double hrel = 1e-4) {
    const double h = hrel * u;
    cplx lhs = hankel_kernel(theta_derivative(phi), u, p);
    cplx H0 = hankel_kernel(phi, u, p);
    cplx dH = (hankel_kernel(phi, u + h, p) - hankel_kernel(phi, u - h, p)) / (2 * h);
    return std::abs(lhs + 2 * p.s * H0 + u * dH);
}

// |H(u^n L)(x) - (-1)^n x^n L(x)| with L in the quadrature normalization
inline double basis_action_check(int n, double x, const ArchParams& p) {
    if (n < 0 || n > 3) throw std::domain_error("basis_action_check: need 0 <= n <= 3");
    auto f = basic_times_poly(n, p.s);
    cplx H = hankel_kernel(f, x, p);
    double expect = (n % 2 ? -1.0 : 1.0) * f(x);
    return std::abs(H - expect);
}

// |M(L)(mu) - zeta_R(mu) zeta_R(1 - 2s + mu)|, Mellin over R^x with the even character
inline double mellin_basic_check(const ArchParams& p, cplx mu) {
    p.validate();
    if (!(mu.real() > 0 && 1 - 2 * p.s + mu.real() > 0)) throw std::domain_error("mellin_basic_check: mu outside the strip");
    cplx m = mellin_num(basic_fn(p), Parity::even, mu, 1e-3 * p.tol);
    return std::abs(m - zeta_real(mu) * zeta_real(1 - 2 * p.s + mu));
}

namespace detail {

// 2 int_0^inf w(x) |F(x)|^2 dx over dyadic-growing panels until negligible; F(-x) = conj F(x) for real phi
template <class W, class FT>
double weighted_l2(W&& w, FT&& F, double tol, double x0 = 1.0) {
    auto f = [&](double x) { return w(x) * std::norm(F(x)); };
    double sum = integrate_adaptive(f, 0.0, x0, tol).value.real();
    double a = x0;
    for (int k = 0, quiet = 0; k < 60 && quiet < 3; ++k) {
        double b = 2 * a;
        double r = integrate_adaptive(f, a, b, tol).value.real();
        sum += r;
        quiet = std::abs(r) < tol ? quiet + 1 : 0;
        a = b;
    }
    return 2 * sum;
}

}  // namespace detail

// (int (1+x^2)^delta |F(phi)(x)|^2 dx)^(1/2)
inline double sobolev_norm(const TestFn& phi, double delta, const ArchParams& p) {
    auto F = [&](double x) { return fourier_num(phi, x, 1e-3 * p.tol); };
    auto w = [&](double x) { return std::pow(1 + x * x, delta); };
    return std::sqrt(std::max(0.0, detail::weighted_l2(w, F, 1e-3 * p.tol)));
}

// relative difference of the H^(1-2s) norms of phi and H phi, with F(H phi)(x) = |x|^(2s-2) F(phi)(-1/x)
inline double isometry_residual(const TestFn& phi, const ArchParams& p) {
    const double s = p.s, delta = 1 - 2 * s;
    double n0 = sobolev_norm(phi, delta, p);
    auto FH = [&](double x) -> cplx {
        if (x == 0) return 0;
        return std::pow(std::abs(x), 2 * s - 2) * fourier_num(phi, -1 / x, 1e-3 * p.tol);
    };
    auto w = [&](double x) { return std::pow(1 + x * x, delta); };
    double n1 = std::sqrt(std::max(0.0, detail::weighted_l2(w, FH, 1e-3 * p.tol)));
    if (n0 == 0) return n1;
    return std::abs(n1 - n0) / n0;
}

namespace detail {

struct NodeSet {
    std::vector<double> y, w;

    // tanh-sinh on [0, b] with nodes stored by their exact distance from 0
    void add_tanh_sinh(double b, double sign, double h = 1.0 / 64) {
        const double hw = 0.5 * b;
        for (double t = -5; t <= 5 + 1e-12; t += h) {
            double u = 0.5 * kPi * std::sinh(t);
            double wt = 0.5 * kPi * std::cosh(t) / (std::cosh(u) * std::cosh(u)) * hw * h;
            double d = 2 * hw / (std::exp(2 * std::abs(u)) + 1);
            if (d <= 0 || wt == 0) continue;
            double x = t < 0 ? d : b - d;
            y.push_back(sign * x);
            w.push_back(wt);
        }
    }
    void add_gauss(double a, double b, double sign, int m = 20) {
        const auto& nw = gauss_legendre(m);
        double c = 0.5 * (a + b), r = 0.5 * (b - a);
        for (auto [x, wt] : nw) {
            y.push_back(sign * (c + r * x));
            w.push_back(wt * r);
        }
    }
};

}  // namespace detail

// |H(H phi)(x) - phi(x)| at each x. The inner transform h = H phi is tabulated once on a
// fixed rule in y (tanh-sinh on [0, 1], Gauss panels beyond, extended until h is negligible
// on both sides) and the outer transform is the kernel integral over that rule.
inline std::vector<double> self_inversion_residuals(const TestFn& phi, const std::vector<double>& xs, const ArchParams& p) {
    p.validate();
    ArchParams inner(p.s, 1e-11);
    std::vector<double> ys, ws, hs;
    for (double sign : {1.0, -1.0}) {
        detail::NodeSet ns;
        ns.add_tanh_sinh(1.0, sign);
        for (size_t i = 0; i < ns.y.size(); ++i) {
            ys.push_back(ns.y[i]);
            ws.push_back(ns.w[i]);
            hs.push_back(hankel_kernel(phi, ns.y[i], inner).real());
        }
        double a = 1.0;
        for (int k = 0, quiet = 0; k < 400 && quiet < 4; ++k) {
            detail::NodeSet g;
            g.add_gauss(a, a + 0.5, sign);
            double mx = 0;
            for (size_t i = 0; i < g.y.size(); ++i) {
                double h = hankel_kernel(phi, g.y[i], inner).real();
                ys.push_back(g.y[i]);
                ws.push_back(g.w[i]);
                hs.push_back(h);
                mx = std::max(mx, std::abs(h));
            }
            quiet = mx < 1e-10 ? quiet + 1 : 0;
            a += 0.5;
        }
    }
    std::vector<double> res;
    for (double x : xs) {
        double acc = 0;
        for (size_t i = 0; i < ys.size(); ++i)
            acc += ws[i] * std::pow(std::abs(ys[i]), 2 * p.s - 1) * hs[i] * detail::kernel_branch(x * ys[i], p.s);
        res.push_back(std::abs(acc - phi(x)));
    }
    return res;
}

// least-squares slope of log L(x) against x on a grid over [x0, x1]
inline double basic_log_slope(const ArchParams& p, double x0 = 5, double x1 = 12, int n = 15) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double x = x0 + (x1 - x0) * i / (n - 1), y = std::log(basic_arch(x, p, BasicRoute::closed_form).real());
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct LogFit {
    double a = 0, b = 0;       // L(x, 1/2) ~ a log(1/x) + b
    double max_rel_resid = 0;  // over the fitting grid
};

// fit of the closed-form basic function at s = 1/2 by a log(1/x) + b on a log grid in [x0, x1]
inline LogFit basic_log_fit(double x0 = 1e-4, double x1 = 1e-2, int n = 21) {
    ArchParams p(0.5);
    std::vector<double> X, Y;
    for (int i = 0; i < n; ++i) {
        double x = x0 * std::pow(x1 / x0, double(i) / (n - 1));
        X.push_back(std::log(1 / x));
        Y.push_back(basic_arch(x, p, BasicRoute::closed_form).real());
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) sx += X[i], sy += Y[i], sxx += X[i] * X[i], sxy += X[i] * Y[i];
    LogFit f;
    f.a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.b = (sy - f.a * sx) / n;
    for (int i = 0; i < n; ++i) f.max_rel_resid = std::max(f.max_rel_resid, std::abs(f.a * X[i] + f.b - Y[i]) / std::abs(Y[i]));
    return f;
}

// |x|^(1-2s) times a Gaussian bump at 0: its transform decays like |xi|^(2s-2)
inline TestFn cusp_gaussian(double s, double width = 0.2) {
    auto g = gaussian_window(0, width, 0);
    auto ev = g.eval;
    return derived_fn("cusp*GaussianWindow", g.a, g.b, [=](double x) { return std::pow(std::abs(x), 1 - 2 * s) * ev(x); });
}

namespace detail {

// 2 int_0^b x^alpha g(x) cos(2 pi xi x) dx, for the even cusp functions above
inline double cusp_fourier(const TestFn& phi, double xi, double tol) {
    const double b = phi.b, hp = 0.5 / std::max(std::abs(xi), 1e-300);
    auto f = [&](double x) { return phi(x) * std::cos(2 * kPi * xi * x); };
    double first = std::min(b, hp);
    auto f0 = [&](double x, double d) { return phi(x < 0.5 * first ? d : x) * std::cos(2 * kPi * xi * (x < 0.5 * first ? d : x)); };
    double sum = integrate_tanh_sinh(f0, 0.0, first, tol).value.real();
    for (double a = first; a < b; a += hp) sum += integrate_adaptive(f, a, std::min(b, a + hp), tol).value.real();
    return 2 * sum;
}

}  // namespace detail

// least-squares exponent of |F(cusp_gaussian)(xi)| over a log grid in [xi0, xi1]
inline double transform_decay_exponent(double s, double xi0 = 10, double xi1 = 200, int n = 12) {
    auto phi = cusp_gaussian(s);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double xi = xi0 * std::pow(xi1 / xi0, double(i) / (n - 1));
        double x = std::log(xi), y = std::log(std::abs(detail::cusp_fourier(phi, xi, 1e-14)));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace vsf
