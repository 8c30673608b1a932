#include <catch2/catch_amalgamated.hpp>

#include "zetak/kernel.hpp"

using namespace zetak;
using Catch::Approx;

TEST_CASE("kernel point values") {
    KernelParams kp{4, 0.05, 10000.0};
    double c = kp.c();
    REQUIRE(c == Approx(0.05 * std::log(10000.0) / 4.0));
    REQUIRE(kernel_value(0.0, kp) == Approx(c).epsilon(1e-12));
    REQUIRE(kernel_value(M_PI / c, kp) < 1e-100); // sine zero up to rounding
    // even and non-negative
    for (double u = 0.0; u < 300.0; u += 0.7) {
        REQUIRE(kernel_value(u, kp) >= 0.0);
        REQUIRE(kernel_value(-u, kp) == kernel_value(u, kp));
    }
    // large eta stays finite in log space
    KernelParams big{100, 0.05, 10000.0};
    REQUIRE(kernel_value(0.0, big) == Approx(big.c()));
    REQUIRE(std::isfinite(kernel_value(10.0, big)));
    REQUIRE_THROWS_AS(kernel_value(0.0, KernelParams{0, 0.05, 100.0}), std::invalid_argument);
}

TEST_CASE("transform at zero against closed-form moments") {
    // integral of (sin x / x)^{2 eta} dx: pi, 2pi/3, 11pi/20, 151pi/315
    const double expect[] = {M_PI, 2.0 * M_PI / 3.0, 11.0 * M_PI / 20.0, 151.0 * M_PI / 315.0};
    for (int eta = 1; eta <= 4; ++eta) {
        KernelParams kp{eta, 0.05, 10000.0};
        REQUIRE(kernel_hat(0.0, kp) == Approx(expect[eta - 1]).epsilon(1e-9));
    }
}

TEST_CASE("transform asymptotics at large eta") {
    KernelParams kp{100, 0.05, 10000.0};
    double ratio = kernel_hat(0.0, kp) / std::sqrt(3.0 * M_PI / 100.0);
    REQUIRE(ratio > 0.95);
    REQUIRE(ratio < 1.05);
}

TEST_CASE("transform is real, even and band-limited") {
    KernelParams kp{10, 0.05, 10000.0};
    double band = kp.band_limit();
    for (double v = 0.0; v <= band * 1.05; v += band / 13.0) {
        auto z = kernel_hat_complex(v, kp);
        REQUIRE(std::abs(z.imag()) < 1e-10);
        REQUIRE(kernel_hat(v, kp) == Approx(kernel_hat(-v, kp)).margin(1e-10));
    }
    REQUIRE(kernel_hat(band * 1.01, kp) == 0.0);
    REQUIRE(kernel_hat(-band * 1.5, kp) == 0.0);
    // quadrature confirms the analytic cutoff
    REQUIRE(std::abs(kernel_hat_complex(band * 1.02, kp)) < 1e-8);
}

TEST_CASE("hat properties on grids") {
    for (int eta : {4, 10}) {
        KernelParams kp{eta, 0.05, 10000.0};
        std::vector<double> grid;
        for (int i = 0; i <= 60; ++i) grid.push_back(kp.band_limit() * i / 60.0);
        REQUIRE(check_kernel_hat_properties(kp, grid));
    }
    KernelParams kp{4, 0.05, 10000.0};
    REQUIRE(check_kernel_hat_properties(kp, {0.0})); // vacuous
    REQUIRE(check_kernel_hat_properties(kp, {}));
    REQUIRE_THROWS_AS(check_kernel_hat_properties(kp, {1.0, 0.5}), std::invalid_argument);
}
