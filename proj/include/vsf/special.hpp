#pragma once
// Gamma, Bessel J/Y/K of real order |nu| < 2, Riemann zeta, Euler's constant.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace vsf {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct AccuracyBudget {
    double abs_tol = 1e-14;
    double rel_tol = 1e-13;
    int max_terms = 400;
};

namespace detail {

// B_{2k} for k = 1..12
constexpr std::array<double, 12> kBernoulli2k = {
    1.0 / 6,          -1.0 / 30,       1.0 / 42,          -1.0 / 30,       5.0 / 66,
    -691.0 / 2730,    7.0 / 6,         -3617.0 / 510,     43867.0 / 798,   -174611.0 / 330,
    854513.0 / 138,   -236364091.0 / 2730};

// Stirling series for log Gamma, valid for Re(w) >= 15
inline cplx lgamma_stirling(cplx w) {
    cplx r = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * kPi);
    cplx winv = 1.0 / w, w2 = winv * winv, p = winv;
    for (int k = 1; k <= 10; ++k) {
        r += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1)) * p;
        p *= w2;
    }
    return r;
}

inline bool near_nonpositive_int(cplx z) {
    return z.imag() == 0 && z.real() <= 0 && z.real() == std::round(z.real());
}

}  // namespace detail

inline cplx gamma_fn(cplx z) {
    if (detail::near_nonpositive_int(z)) throw std::domain_error("gamma_fn: pole at non-positive integer");
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_fn(1.0 - z));
    cplx w = z, prod = 1.0;
    while (w.real() < 15) {
        prod *= w;
        w += 1.0;
    }
    return std::exp(detail::lgamma_stirling(w)) / prod;
}

inline double gamma_fn(double x) { return gamma_fn(cplx(x, 0)).real(); }

// 1/Gamma(x), zero at the poles
inline double rgamma(double x) {
    if (x <= 0 && x == std::round(x)) return 0.0;
    return 1.0 / gamma_fn(x);
}

inline double euler_gamma() {
    // H_N - log N - 1/(2N) + sum B_{2k} / (2k N^{2k})
    const int N = 20;
    double h = 0;
    for (int n = N; n >= 1; --n) h += 1.0 / n;
    double r = h - std::log(double(N)) - 0.5 / N, p = 1.0 / (double(N) * N);
    for (int k = 1; k <= 8; ++k) {
        r += detail::kBernoulli2k[k - 1] / (2.0 * k) * p;
        p /= double(N) * N;
    }
    return r;
}

namespace detail {

// power series in extended precision; the terms reach ~e^x / sqrt(x) before cancelling
inline long double bessel_j_series_ld(double nu, double x) {
    long double h = 0.5L * x, h2 = h * h;
    double rg = rgamma(nu + 1);
    int k0 = 0;
    long double term;
    if (rg == 0) {
        // nu = -n: the first n terms vanish
        k0 = int(std::round(-nu));
        term = std::pow(-1.0L, k0) * std::pow(h, 2 * k0 + (long double)nu) / (std::tgamma(k0 + 1.0L) * gamma_fn(k0 + nu + 1));
    } else {
        term = std::pow(h, (long double)nu) * (long double)rg;
    }
    long double sum = 0;
    for (int k = k0; k < k0 + 300; ++k) {
        sum += term;
        term *= -h2 / ((k + 1.0L) * (k + 1.0L + nu));
        if (std::abs(term) < 1e-21L * std::abs(sum) && k > h) break;
    }
    return sum;
}
inline double bessel_j_series(double nu, double x) { return double(bessel_j_series_ld(nu, x)); }

// Hankel asymptotic P, Q
inline void hankel_pq(double nu, double x, double& P, double& Q) {
    const double m = 4 * nu * nu;
    P = 1;
    Q = 0;
    double a = 1, prev = 1e300;
    for (int k = 1; k < 80; ++k) {
        a *= (m - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
        double mag = std::abs(a);
        if (mag > prev) break;
        prev = mag;
        int r = k % 4;
        if (r == 1) Q += a;
        else if (r == 2) P -= a;
        else if (r == 3) Q -= a;
        else P += a;
        if (mag < 1e-17) break;
    }
}

inline double bessel_y0_series(double x) {
    long double h2 = 0.25L * x * x, term = 1, hk = 0, sum = 0;
    for (int k = 1; k < 300; ++k) {
        term *= h2 / ((long double)k * k);
        hk += 1.0L / k;
        long double t = ((k & 1) ? 1 : -1) * hk * term;
        sum += t;
        if (std::abs(t) < 1e-21L * std::abs(sum) && k > x) break;
    }
    const long double g = 0.577215664901532860606512090082402431L;
    return double(2 / (long double)kPi * ((std::log(0.5L * x) + g) * bessel_j_series_ld(0, x) + sum));
}

inline double bessel_y_reflect(double nu, double x) {
    long double c = std::cos((long double)nu * (long double)kPi), sn = std::sin((long double)nu * (long double)kPi);
    return double((bessel_j_series_ld(nu, x) * c - bessel_j_series_ld(-nu, x)) / sn);
}

}  // namespace detail

inline void check_bessel_domain(double nu, double x) {
    if (!(x > 0)) throw std::domain_error("bessel: x must be positive");
    if (!(std::abs(nu) < 2)) throw std::domain_error("bessel: |nu| must be < 2");
}

inline double bessel_j(double nu, double x) {
    check_bessel_domain(nu, x);
    if (x < 12) return detail::bessel_j_series(nu, x);
    double P, Q;
    detail::hankel_pq(nu, x, P, Q);
    double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

inline double bessel_y(double nu, double x) {
    check_bessel_domain(nu, x);
    if (x >= 12) {
        double P, Q;
        detail::hankel_pq(nu, x, P, Q);
        double chi = x - (0.5 * nu + 0.25) * kPi;
        return std::sqrt(2 / (kPi * x)) * (P * std::sin(chi) + Q * std::cos(chi));
    }
    if (nu == 0) return detail::bessel_y0_series(x);
    if (std::abs(std::sin(nu * kPi)) >= 1e-3) return detail::bessel_y_reflect(nu, x);
    // near-integer order: symmetric Richardson extrapolation in nu
    const double n = std::round(nu);
    if (n == 0 && std::abs(nu) < 1e-3) {
        // Y is smooth in nu; interpolate between the log series and offset orders
        double h = 2e-3;
        double y0 = detail::bessel_y0_series(x);
        double yp = detail::bessel_y_reflect(h, x), ym = detail::bessel_y_reflect(-h, x);
        double d1 = (yp - ym) / (2 * h), d2 = (yp - 2 * y0 + ym) / (h * h);
        return y0 + d1 * nu + 0.5 * d2 * nu * nu;
    }
    const double d = nu - n;
    auto g = [&](double h) {
        return 0.5 * (detail::bessel_y_reflect(n + d + h, x) + detail::bessel_y_reflect(n + d - h, x));
    };
    double h = 4e-3;
    double a1 = g(h), a2 = g(2 * h), a3 = g(4 * h);
    double r1 = (4 * a1 - a2) / 3, r2 = (4 * a2 - a3) / 3;
    return (16 * r1 - r2) / 15;
}

inline double bessel_k(double nu, double x) {
    check_bessel_domain(nu, x);
    if (x > 700) return 0.0;
    // trapezoid rule on the double-exponentially decaying representation
    const double h = std::min(0.1, 0.5 / std::sqrt(x));
    double sum = 0.5;  // t = 0 term of cosh(nu t) exp(-x (cosh t - 1))
    for (int k = 1; k < 100000; ++k) {
        double t = k * h;
        double e = -x * (std::cosh(t) - 1);
        double f = 0.5 * (std::exp(nu * t + e) + std::exp(-nu * t + e));
        sum += f;
        if (f < 1e-18 * sum && x * std::sinh(t) > std::abs(nu)) break;
    }
    return h * sum * std::exp(-x);
}

namespace detail {

inline cplx zeta_em(cplx s) {
    const int N = 30 + int(std::abs(s.imag()));
    cplx sum = 0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(double(n), -s);
    const double Nd = N;
    sum += std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
    cplx rise = s, npow = std::pow(Nd, -s - 1.0);
    double fact = 2;
    for (int k = 1; k <= 12; ++k) {
        sum += kBernoulli2k[k - 1] / fact * rise * npow;
        rise *= (s + double(2 * k - 1)) * (s + double(2 * k));
        npow /= Nd * Nd;
        fact *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    return sum;
}

// alternating zeta by Borwein's accelerated series
inline cplx eta_borwein(cplx s, int n = 60) {
    std::array<double, 61> d{};
    double term = 1.0 / n, acc = term;
    d[0] = acc;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1) * (2.0 * i));
        acc += term;
        d[i] = acc;
    }
    cplx sum = 0;
    for (int k = n - 1; k >= 0; --k) sum += ((k & 1) ? -1.0 : 1.0) * (d[k] - d[n]) * std::pow(k + 1.0, -s);
    return -sum / d[n];
}

}  // namespace detail

inline cplx riemann_zeta(cplx s) {
    if (s == cplx(1, 0)) throw std::domain_error("riemann_zeta: pole at s = 1");
    if (s.real() <= -1) throw std::domain_error("riemann_zeta: implemented for Re(s) > -1");
    if (s.real() > 0 && s.real() < 1 && std::abs(s.imag()) <= 10)
        return detail::eta_borwein(s) / (1.0 - std::pow(2.0, 1.0 - s));
    return detail::zeta_em(s);
}
inline double riemann_zeta(double s) { return riemann_zeta(cplx(s, 0)).real(); }

// archimedean local zeta factor pi^{-s/2} Gamma(s/2)
inline cplx zeta_real(cplx s) { return std::pow(kPi, -0.5 * s) * gamma_fn(0.5 * s); }
inline double zeta_real(double s) { return zeta_real(cplx(s, 0)).real(); }

}  // namespace vsf
