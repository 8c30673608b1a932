#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace zetak {

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1, 1].
inline constexpr double kGk15Nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double kGk15Weights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double kGauss7Weights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

template <class F>
inline void gk15(const F& f, double a, double b, std::complex<double>& value, double& err) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::complex<double> kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        auto fx = f(mid + half * kGk15Nodes[i]);
        kron += kGk15Weights[i] * fx;
        if (i % 2 == 1) gauss += kGauss7Weights[i / 2] * fx;
    }
    value = kron * half;
    err = std::abs(kron - gauss) * half;
}

template <class F>
inline std::complex<double> adaptive_quadrature(const F& f, double a, double b, double tol,
                                                int max_depth = 40) {
    std::complex<double> value;
    double err;
    gk15(f, a, b, value, err);
    // the relative floor stops subdivision once the error estimate sits at
    // the rounding plateau of the panel itself
    if (err <= tol + 5e-15 * std::abs(value) || b - a < 1e-14) return value;
    if (max_depth <= 0) throw std::runtime_error("adaptive_quadrature: failed to converge");
    double mid = 0.5 * (a + b);
    return adaptive_quadrature(f, a, mid, 0.5 * tol, max_depth - 1) +
           adaptive_quadrature(f, mid, b, 0.5 * tol, max_depth - 1);
}

} // namespace detail

// Power-of-Fejer smoothing kernel sin^{2 eta}(c u) / (c^{2 eta - 1} u^{2 eta})
// with c = epsilon log(T) / eta.
struct KernelParams {
    int eta = 4;
    double epsilon = 0.05;
    double T = 10000.0;

    double c() const { return epsilon * std::log(T) / static_cast<double>(eta); }
    double band_limit() const { return 2.0 * epsilon * std::log(T); } // = 2 eta c

    void validate() const {
        if (eta < 1) throw std::invalid_argument("KernelParams: need eta >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("KernelParams: need epsilon > 0");
        if (!(T > 16.0)) throw std::invalid_argument("KernelParams: need T > 16");
    }
};

// Evaluated in log space so eta in the hundreds cannot underflow the
// intermediate powers; K(0) = c by the Taylor limit.
inline double kernel_value(double u, const KernelParams& kp) {
    kp.validate();
    double c = kp.c();
    double x = c * std::abs(u);
    if (x < 1e-8) return c * std::exp(-static_cast<double>(2 * kp.eta) * x * x / 6.0);
    double s = std::sin(x);
    if (s == 0.0) return 0.0;
    double log_ratio = std::log(std::abs(s)) - std::log(x);
    return std::exp(static_cast<double>(2 * kp.eta) * log_ratio + std::log(c));
}

namespace detail {

inline double kernel_tail_cutoff(const KernelParams& kp, double tol) {
    // integral beyond U is below (cU)^{1-2 eta} / (2 eta - 1)
    double c = kp.c();
    double n = static_cast<double>(2 * kp.eta - 1);
    double cu = std::max(4.0, std::pow(10.0 / (tol * n), 1.0 / n));
    return cu / c;
}

} // namespace detail

// Fourier transform with both components, integrating K(u) e^{-iuv} over
// lobe-aligned panels; the imaginary part is a numerical-noise witness.
inline std::complex<double> kernel_hat_complex(double v, const KernelParams& kp,
                                               double tol = 1e-12) {
    kp.validate();
    if (kp.eta == 1) {
        // Fejer case, known in closed form: a triangle of height pi
        double c = kp.c();
        return {M_PI * std::max(0.0, 1.0 - std::abs(v) / (2.0 * c)), 0.0};
    }
    double u_max = detail::kernel_tail_cutoff(kp, tol);
    double lobe = M_PI / kp.c() / 2.0;
    auto f = [&](double u) {
        return kernel_value(u, kp) *
               std::complex<double>(std::cos(u * v), -std::sin(u * v));
    };
    std::complex<double> total = 0.0;
    double a = -u_max;
    std::size_t panels = static_cast<std::size_t>(std::ceil(2.0 * u_max / lobe));
    double panel_tol = tol / static_cast<double>(panels + 1);
    while (a < u_max) {
        double b = std::min(u_max, a + lobe);
        total += detail::adaptive_quadrature(f, a, b, panel_tol);
        a = b;
    }
    return total;
}

// Real transform; exactly zero outside the spectral support |v| > 2 eta c.
inline double kernel_hat(double v, const KernelParams& kp, double tol = 1e-12) {
    kp.validate();
    if (std::abs(v) > kp.band_limit()) return 0.0;
    auto z = kernel_hat_complex(v, kp, tol);
    if (std::abs(z.imag()) > 1e-8)
        throw std::runtime_error("kernel_hat: imaginary component above tolerance");
    return z.real();
}

// Grid checks: 0 <= hat <= hat(0), non-increasing on [0, inf), and the
// central-difference derivative bounded by hat_{eta-1}(0) / c.
inline bool check_kernel_hat_properties(const KernelParams& kp, const std::vector<double>& grid,
                                        double slack = 0.01) {
    kp.validate();
    if (kp.eta < 2)
        throw std::invalid_argument("check_kernel_hat_properties: need eta >= 2");
    if (grid.empty()) return true;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] >= grid[i - 1]) || grid[i - 1] < 0.0)
            throw std::invalid_argument("check_kernel_hat_properties: grid must be sorted, >= 0");

    double hat0 = kernel_hat(0.0, kp);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double v : grid) values.push_back(kernel_hat(v, kp));

    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < -1e-10) return false;
        if (values[i] > hat0 + 1e-10) return false;
        if (i > 0 && values[i] > values[i - 1] + 1e-10) return false;
    }
    if (grid.size() < 2) return true;

    KernelParams lower = kp;
    lower.eta = kp.eta - 1;
    double bound = kernel_hat(0.0, lower) / kp.c();
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        double dv = grid[i + 1] - grid[i];
        if (dv <= 0.0) continue;
        double deriv = std::abs(values[i + 1] - values[i]) / dv;
        if (deriv > bound * (1.0 + slack) + 1e-9) return false;
    }
    return true;
}

} // namespace zetak
