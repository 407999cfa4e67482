#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "vsf/cli.hpp"

using namespace vsf;

namespace {

void print_value(const std::string& label, double v) {
    std::cout.precision(17);
    std::cout << label << " " << v << "\n";
}

// J/Y: Wronskian J_{nu+1} Y_nu - J_nu Y_{nu+1} = 2/(pi x); K: K_{nu+1} - K_{nu-1} = (2 nu/x) K_nu
double bessel_consistency(char kind, double nu, double x) {
    if (kind == 'K') {
        return std::abs(bessel_k(nu + 1, x) - bessel_k(nu - 1, x) - 2 * nu / x * bessel_k(nu, x));
    }
    double w = bessel_j(nu + 1, x) * bessel_y(nu, x) - bessel_j(nu, x) * bessel_y(nu + 1, x);
    return std::abs(w - 2 / (kPi * x)) * std::max(std::abs(bessel_j(nu, x)), std::abs(bessel_y(nu, x))) * kPi * x / 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bessel kernels, Hankel transforms and summation-formula checks"};
    app.set_config("--config", "", "key = value configuration file; flags given on the command line win");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    auto* bessel = app.add_subcommand("bessel", "Bessel function J, Y or K of real order");
    std::string kind = "K";
    double nu = 0, x = 1;
    bessel->add_option("--kind", kind)->check(CLI::IsMember({"J", "Y", "K"}));
    bessel->add_option("--nu", nu)->required();
    bessel->add_option("--x", x)->required();

    auto* zeta = app.add_subcommand("zeta", "Riemann zeta function at real s");
    double zs = 2;
    zeta->add_option("--s", zs)->required();

    auto* kernel = app.add_subcommand("kernel", "real Bessel kernel K(a, s) and its symmetrization");
    double ka = 1, ks = 0.5;
    kernel->add_option("--a", ka)->required();
    kernel->add_option("--s", ks)->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite and write its report");
    RunConfig cfg;
    std::vector<double> support;
    std::string out;
    double tol = 0;
    long prime = 0;
    verify->add_option("suite", cfg.suite, "voronoi | oppenheim | poisson | local | arch")->required();
    verify->add_option("--s", cfg.s, "values of s");
    verify->add_option("--q", cfg.q, "residue field sizes (local suite)");
    verify->add_option("--prime", prime, "poisson: place carrying the unit-group indicator");
    verify->add_option("--tol", tol, "tolerance; default depends on the suite");
    verify->add_option("--support", support, "support [A, B] of the test function")->expected(2);
    verify->add_option("--family", cfg.family, "bump | gaussian");
    verify->add_option("--max-n", cfg.max_n, "truncation cap");
    verify->add_option("--out", out, "report path; stdout if omitted");
    verify->add_option("--format", cfg.format, "json | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*bessel) {
            double v = kind == "J" ? bessel_j(nu, x) : kind == "Y" ? bessel_y(nu, x) : bessel_k(nu, x);
            print_value("value", v);
            print_value("error_estimate", bessel_consistency(kind[0], nu, x));
            return 0;
        }
        if (*zeta) {
            double v = riemann_zeta(zs);
            print_value("value", v);
            print_value("error_estimate", std::abs(v - detail::zeta_em(cplx(zs)).real()));
            return 0;
        }
        if (*kernel) {
            auto k = kernel_arch(ka, ArchParams(ks));
            const double z = 4 * kPi * std::sqrt(std::abs(ka)), order = 1 - 2 * ks;
            print_value("value", k.value);
            print_value("symmetrized", k.symmetrized);
            print_value("error_estimate", 2 * kPi * (bessel_consistency('J', order, z) + bessel_consistency('K', order, z)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (verify->count("--tol")) cfg.tol = tol;
    if (verify->count("--prime")) cfg.prime = prime;
    if (!support.empty()) cfg.support_a = support[0], cfg.support_b = support[1];
    SuiteResult res;
    try {
        res = run_suite(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    std::string text = cfg.format == "csv" ? suite_csv(res) : suite_json(res).dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
        f << text;
    }
    for (auto& c : res.checks) std::cerr << c.status << "  " << c.name << "\n";
    return res.all_passed() ? 0 : 1;
}
