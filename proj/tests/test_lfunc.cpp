#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <sstream>

#include "zetak/lfunc.hpp"

using namespace zetak;
using std::complex;

namespace {

// Cohen-Rodriguez Villegas-Zagier acceleration for alternating series
// sum_{k>=0} (-1)^k a(k); independent oracle for L-values of odd modulus-4
// style series.
double cvz_alternating(const std::function<double(int)>& a, int n) {
    double b = -1.0, c = 0.0, s = 0.0;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    c = -d;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * a(k);
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1));
    }
    return s / d;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    for (int i = 0; i < iters; ++i) {
        if (f(c) < f(d))
            b = d;
        else
            a = c;
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    return (a + b) / 2;
}

} // namespace

TEST_CASE("zeta classical values") {
    EvalConfig cfg;
    cfg.tolerance = 1e-10;
    REQUIRE(std::abs(zeta_value({2.0, 0.0}, cfg) - M_PI * M_PI / 6.0) < 1e-10);

    // absolutely convergent region: direct partial sum oracle
    double direct = 0.0;
    for (long n = 1000000; n >= 1; --n) direct += 1.0 / (double(n) * n * n);
    REQUIRE(std::abs(zeta_value({3.0, 0.0}, cfg) - direct) < 1e-9);
}

TEST_CASE("zeta first zero located by minimization") {
    EvalConfig cfg;
    cfg.tolerance = 1e-10;
    auto mod = [&](double t) { return std::abs(zeta_value({0.5, t}, cfg)); };
    double t0 = golden_min(mod, 14.0, 14.3, 60);
    REQUIRE(std::abs(t0 - 14.134725141734695) < 1e-3);
    REQUIRE(mod(t0) < 1e-4);
}

TEST_CASE("zeta guards") {
    REQUIRE_THROWS_AS(zeta_value({1.0, 0.0}), std::domain_error);
    REQUIRE_THROWS_AS(zeta_value({0.2, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(zeta_value({0.5, 2e5}), std::invalid_argument);
    EvalConfig tight;
    tight.tolerance = 1e-12;
    tight.max_terms = 50;
    REQUIRE_THROWS_AS(zeta_value({0.5, 9e4}, tight), std::runtime_error);
    EvalConfig bad;
    bad.tolerance = 1e-2;
    REQUIRE_THROWS_AS(zeta_value({2.0, 0.0}, bad), std::invalid_argument);
}

TEST_CASE("hurwitz backbone sanity") {
    // zeta(2, 1/2) = pi^2/2, via the pole-free form
    auto v = detail::hurwitz_minus_pole({2.0, 0.0}, 0.5, 1e-12, 1000000) + 1.0;
    REQUIRE(std::abs(v - M_PI * M_PI / 2.0) < 1e-11);
}

TEST_CASE("Dirichlet L values against series oracles") {
    EvalConfig cfg;
    cfg.tolerance = 1e-12;
    auto chi4 = character_group(4)[1];

    // Leibniz: L(1, chi_-4) = pi/4
    REQUIRE(std::abs(lfunction_value(chi4, {1.0, 0.0}, cfg) - M_PI / 4.0) < 1e-11);

    // Catalan via accelerated alternating series
    double catalan = cvz_alternating([](int k) { return 1.0 / ((2.0 * k + 1) * (2 * k + 1)); }, 30);
    REQUIRE(std::abs(catalan - 0.9159655941772190) < 1e-13); // oracle self-check
    REQUIRE(std::abs(lfunction_value(chi4, {2.0, 0.0}, cfg) - catalan) < 1e-11);

    // non-principal character mod 3 at s = 2: grouped convergent series
    double l3 = 0.0;
    for (long k = 200000; k >= 0; --k)
        l3 += 1.0 / ((3.0 * k + 1) * (3 * k + 1)) - 1.0 / ((3.0 * k + 2) * (3 * k + 2));
    auto chi3 = character_group(3)[1];
    REQUIRE(std::abs(lfunction_value(chi3, {2.0, 0.0}, cfg) - l3) < 1e-10);
}

TEST_CASE("principal characters reduce to zeta with Euler factors") {
    EvalConfig cfg;
    cfg.tolerance = 1e-11;
    auto chi0 = character_group(6)[0];
    REQUIRE(chi0.is_principal());
    complex<double> expect = zeta_value({2.0, 0.0}, cfg) * (1.0 - 0.25) * (1.0 - 1.0 / 9.0);
    REQUIRE(std::abs(lfunction_value(chi0, {2.0, 0.0}, cfg) - expect) < 1e-10);
    REQUIRE_THROWS_AS(lfunction_value(chi0, {1.0, 0.0}, cfg), std::domain_error);
}

TEST_CASE("Dedekind zeta product assembly") {
    EvalConfig cfg;
    cfg.tolerance = 1e-10;
    auto chi4 = character_group(4)[1];
    auto expect = zeta_value({2.0, 0.0}, cfg) * lfunction_value(chi4, {2.0, 0.0}, cfg);
    REQUIRE(std::abs(dedekind_zeta_value({2.0, 0.0}, 4, cfg) - expect) < 1e-10);
    REQUIRE(std::abs(dedekind_zeta_value({2.0, 0.0}, 4, cfg) - 1.5067030099) < 2e-10);

    auto chi3 = character_group(3)[1];
    auto expect3 = zeta_value({2.0, 0.0}, cfg) * lfunction_value(chi3, {2.0, 0.0}, cfg);
    REQUIRE(std::abs(dedekind_zeta_value({2.0, 0.0}, 3, cfg) - expect3) < 1e-10);
}

TEST_CASE("conjugate symmetry") {
    EvalConfig cfg;
    cfg.tolerance = 1e-11;
    for (complex<double> s : {complex<double>{0.7, 13.0}, {2.0, 31.5}, {0.5, 47.25}}) {
        auto a = zeta_value(s, cfg);
        auto b = zeta_value(std::conj(s), cfg);
        REQUIRE(std::abs(b - std::conj(a)) < 1e-10);
        for (std::uint64_t d : {3ULL, 5ULL}) {
            auto p = dedekind_zeta_value(s, d, cfg);
            auto q = dedekind_zeta_value(std::conj(s), d, cfg);
            REQUIRE(std::abs(q - std::conj(p)) < 1e-10 * std::max(1.0, std::abs(p)));
        }
    }
    EvalConfig dir;
    dir.smoothing = Smoothing::kSmoothCutoff;
    auto a = dedekind_zeta_direct({0.5, 10.0}, 3, 100000, dir);
    auto b = dedekind_zeta_direct({0.5, -10.0}, 3, 100000, dir);
    REQUIRE(std::abs(b.value - std::conj(a.value)) < 1e-12);
}

TEST_CASE("direct sum agrees with the product") {
    EvalConfig prod;
    prod.tolerance = 1e-11;
    EvalConfig dir;
    dir.smoothing = Smoothing::kSmoothCutoff;

    // absolutely convergent checks
    auto p4 = dedekind_zeta_value({3.0, 0.0}, 4, prod);
    auto d4 = dedekind_zeta_direct({3.0, 0.0}, 4, 100000, dir);
    REQUIRE(std::abs(p4 - d4.value) < 1e-8);

    auto p5 = dedekind_zeta_value({2.0, 0.0}, 5, prod);
    auto d5 = dedekind_zeta_direct({2.0, 0.0}, 5, 100000, dir);
    REQUIRE(std::abs(p5 - d5.value) < 1e-6);

    // sharp mode in the absolutely convergent region
    EvalConfig sharp;
    sharp.smoothing = Smoothing::kSharpEulerMaclaurin;
    auto s4 = dedekind_zeta_direct({3.0, 0.0}, 4, 1000000, sharp);
    REQUIRE(std::abs(p4 - s4.value) < 1e-5);
    REQUIRE(s4.est_error > 0.0);

    // critical line, modest heights; the d = 5, t = 50 point runs in the
    // acceptance suite
    for (std::uint64_t d : {3ULL, 4ULL}) {
        for (double t : {10.0, 20.0, 50.0}) {
            auto p = dedekind_zeta_value({0.5, t}, d, prod);
            auto v = dedekind_zeta_direct({0.5, t}, d, 100000, dir);
            REQUIRE(std::abs(p - v.value) / std::abs(p) < 1e-6);
        }
    }
    auto p = dedekind_zeta_value({0.5, 10.0}, 5, prod);
    std::uint64_t x = direct_length_for({0.5, 10.0}, 5, 1e-7 * std::abs(p));
    auto v = dedekind_zeta_direct({0.5, 10.0}, 5, x, dir);
    REQUIRE(std::abs(p - v.value) / std::abs(p) < 1e-6);
}

TEST_CASE("direct sum guards and degenerate cases") {
    EvalConfig dir;
    dir.smoothing = Smoothing::kSmoothCutoff;
    // X = 1 keeps only the weighted n = 1 term, with weight 1/2 at the cutoff
    auto v = dedekind_zeta_direct({3.0, 0.0}, 5, 1, dir);
    REQUIRE(std::abs(v.value - 0.5) < 1e-15);

    EvalConfig sharp;
    sharp.smoothing = Smoothing::kSharpEulerMaclaurin;
    REQUIRE_THROWS_AS(dedekind_zeta_direct({0.5, 10.0}, 5, 1000, sharp), std::invalid_argument);
    REQUIRE_THROWS_AS(dedekind_zeta_direct({0.5, 500.0}, 5, 1000, dir), std::invalid_argument);
    REQUIRE_THROWS_AS(dedekind_zeta_direct({2.0, 0.0}, 5, 10'000'000'000ULL, dir),
                      std::overflow_error);
}

TEST_CASE("residue of the Dedekind zeta") {
    // rho_K = lim (s-1) zeta_K(s): check against a numerical limit
    EvalConfig cfg;
    cfg.tolerance = 1e-11;
    for (std::uint64_t d : {3ULL, 4ULL, 5ULL}) {
        double rho = dedekind_residue(d, cfg);
        for (double eps : {1e-4, 1e-5}) {
            auto near = dedekind_zeta_value({1.0 + eps, 0.0}, d, cfg);
            REQUIRE(std::abs(near.real() * eps - rho) < 50 * eps);
        }
    }
}

TEST_CASE("shrinking the tolerance never worsens the value") {
    EvalConfig ref;
    ref.tolerance = 1e-12;
    for (complex<double> s : {complex<double>{2.0, 0.0}, {0.5, 10.0}}) {
        auto reference = zeta_value(s, ref);
        double prev_err = 1e9;
        for (double tol : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10}) {
            EvalConfig cfg;
            cfg.tolerance = tol;
            double err = std::abs(zeta_value(s, cfg) - reference);
            REQUIRE(err <= tol);
            REQUIRE(err <= prev_err + 1e-15);
            prev_err = err;
        }
    }
}

TEST_CASE("grid CSV emission") {
    std::ostringstream os;
    write_zeta_grid_csv(os, 3, {10.0, 20.0});
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    REQUIRE(header == "t,re,im,abs,est_error");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) {
        ++rows;
        REQUIRE(std::count(line.begin(), line.end(), ',') == 4);
        double t, re, im, mod;
        char c;
        std::istringstream row(line);
        row >> t >> c >> re >> c >> im >> c >> mod;
        REQUIRE(std::abs(std::abs(complex<double>(re, im)) - mod) < 1e-12);
    }
    REQUIRE(rows == 2);
}
