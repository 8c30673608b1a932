#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "zetak/characters.hpp"
#include "zetak/dedekind.hpp"
#include "zetak/util.hpp"

namespace zetak {

enum class Smoothing { kSharpEulerMaclaurin, kSmoothCutoff };

struct EvalConfig {
    double tolerance = 1e-8; // absolute error target per value
    long max_terms = 4'000'000;
    Smoothing smoothing = Smoothing::kSharpEulerMaclaurin;
};

inline constexpr double kDefaultHeightCeiling = 1e5;
inline constexpr std::uint64_t kDirectCoefficientCapacity = 200'000'000ULL;

inline void validate_config(const EvalConfig& cfg) {
    if (!(cfg.tolerance >= 1e-12 && cfg.tolerance <= 1e-3))
        throw std::invalid_argument("EvalConfig: tolerance must lie in [1e-12, 1e-3]");
    if (cfg.max_terms < 10) throw std::invalid_argument("EvalConfig: max_terms must be >= 10");
}

// x^(-s) for x > 0, split into polar parts so conjugating s conjugates the
// result exactly.
inline std::complex<double> pow_real_neg(double x, std::complex<double> s) {
    double lx = std::log(x);
    double mag = std::exp(-s.real() * lx);
    double phase = -s.imag() * lx;
    return {mag * std::cos(phase), mag * std::sin(phase)};
}

namespace detail {

// (x^w - 1) / w, stable as w -> 0 (w = (1-s), x = M + a).
inline std::complex<double> expm1_ratio(std::complex<double> w, double log_x) {
    std::complex<double> z = w * log_x;
    if (std::abs(z) < 1e-4) {
        // log_x * (1 + z/2 + z^2/6 + z^3/24)
        return log_x * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
    }
    return (std::exp(z) - 1.0) / w;
}

// Hurwitz zeta with the pole removed: zeta(s, a) - 1/(s-1), by truncated sum
// plus Euler-Maclaurin correction through the B4 term. Also usable at s = 1.
inline std::complex<double> hurwitz_minus_pole(std::complex<double> s, double a, double tol,
                                               long max_terms) {
    double sigma = s.real(), t = std::abs(s.imag());
    // first omitted term (B6) drives the truncation length
    double ps5 = 1.0;
    for (int i = 0; i < 5; ++i) ps5 *= std::abs(s + static_cast<double>(i));
    double want = std::pow(ps5 / (30240.0 * 0.5 * tol), 1.0 / (sigma + 5.0));
    long m_terms = static_cast<long>(std::ceil(std::max({16.0, t / 4.0, want - a})));
    if (m_terms > max_terms)
        throw std::runtime_error("hurwitz: tolerance unachievable within max_terms");

    CompensatedSum re, im;
    for (long n = 0; n < m_terms; ++n) {
        auto term = pow_real_neg(a + static_cast<double>(n), s);
        re.add(term.real());
        im.add(term.imag());
    }
    double q = a + static_cast<double>(m_terms);
    auto qs = pow_real_neg(q, s); // q^{-s}
    std::complex<double> sum(re.value(), im.value());
    // (q^{1-s} - 1)/(s-1) = -(e^{(1-s) log q} - 1)/(1-s)
    sum -= expm1_ratio(1.0 - s, std::log(q));
    sum += 0.5 * qs;
    sum += s * qs / (12.0 * q);
    sum -= s * (s + 1.0) * (s + 2.0) * qs / (720.0 * q * q * q);
    return sum;
}

} // namespace detail

// Riemann zeta on 0.4 <= Re(s) <= 3, truncated series of ~C(1+|t|) terms with
// Euler-Maclaurin tail correction.
inline std::complex<double> zeta_value(std::complex<double> s, const EvalConfig& cfg = {},
                                       double height_ceiling = kDefaultHeightCeiling) {
    validate_config(cfg);
    if (!(s.real() >= 0.4 && s.real() <= 3.0))
        throw std::invalid_argument("zeta_value: Re(s) must lie in [0.4, 3]");
    if (std::abs(s.imag()) > height_ceiling)
        throw std::invalid_argument("zeta_value: |Im(s)| exceeds the height ceiling");
    if (std::abs(s - 1.0) < 1e-10) throw std::domain_error("zeta_value: pole at s = 1");
    return detail::hurwitz_minus_pole(s, 1.0, cfg.tolerance, cfg.max_terms) + 1.0 / (s - 1.0);
}

// L(s, chi). Non-principal characters go through per-residue Hurwitz values
// with the pole terms cancelled analytically (so s = 1 is fine); principal
// characters reduce to zeta times finite Euler factors.
inline std::complex<double> lfunction_value(const DirichletCharacter& chi, std::complex<double> s,
                                            const EvalConfig& cfg = {},
                                            double height_ceiling = kDefaultHeightCeiling) {
    validate_config(cfg);
    std::uint64_t d = chi.modulus();
    if (chi.is_principal()) {
        if (std::abs(s - 1.0) < 1e-10)
            throw std::domain_error("lfunction_value: principal character has a pole at s = 1");
        auto value = zeta_value(s, cfg, height_ceiling);
        auto df = factor_u64(d);
        for (const auto& f : df.factors())
            value *= 1.0 - pow_real_neg(static_cast<double>(f.prime), s);
        return value;
    }
    if (std::abs(s.imag()) > height_ceiling)
        throw std::invalid_argument("lfunction_value: |Im(s)| exceeds the height ceiling");
    // sum_r chi(r) * 1/(s-1) vanishes by orthogonality, so only the
    // regularized Hurwitz values enter
    double tol_each = cfg.tolerance / static_cast<double>(euler_phi(d));
    std::complex<double> acc = 0.0;
    for (std::uint64_t r = 1; r <= d; ++r) {
        if (!chi.is_unit(r)) continue;
        acc += chi(r) * detail::hurwitz_minus_pole(s, static_cast<double>(r) / d, tol_each,
                                                   cfg.max_terms);
    }
    return pow_real_neg(static_cast<double>(d), s) * acc;
}

// Product of the conductors of all inducing primitive characters mod d; for
// the d-th cyclotomic field this is |disc|.
inline double conductor_product(std::uint64_t d) {
    double prod = 1.0;
    for (const auto& chi : character_group(d)) prod *= static_cast<double>(chi.conductor());
    return prod;
}

// Residue of the Dedekind zeta function of the d-th cyclotomic field:
// product of L(1, chi*) over non-principal chi.
inline double dedekind_residue(std::uint64_t d, const EvalConfig& cfg = {}) {
    if (d < 3) throw std::invalid_argument("dedekind_residue: need d >= 3");
    std::complex<double> prod = 1.0;
    for (const auto& chi : character_group(d)) {
        if (chi.is_principal()) continue;
        auto [f, star] = conductor_and_primitive(chi);
        prod *= lfunction_value(star, 1.0, cfg);
    }
    if (std::abs(prod.imag()) > 1e-8 * std::abs(prod))
        throw std::runtime_error("dedekind_residue: residue came out non-real");
    return prod.real();
}

// zeta_K(s) as zeta(s) times the product of L(s, chi*) over non-principal
// chi mod d. The factor tolerances are budgeted off first-pass magnitudes so
// the assembled product meets cfg.tolerance in relative terms.
inline std::complex<double> dedekind_zeta_value(std::complex<double> s, std::uint64_t d,
                                                const EvalConfig& cfg = {},
                                                double height_ceiling = kDefaultHeightCeiling) {
    validate_config(cfg);
    if (d < 3) throw std::invalid_argument("dedekind_zeta_value: need d >= 3");
    if (std::abs(s - 1.0) < 1e-10) throw std::domain_error("dedekind_zeta_value: pole at s = 1");

    std::vector<DirichletCharacter> primitives;
    for (const auto& chi : character_group(d)) {
        if (chi.is_principal()) continue;
        auto [f, star] = conductor_and_primitive(chi);
        primitives.push_back(star);
    }
    std::size_t nfac = primitives.size() + 1;

    EvalConfig coarse = cfg;
    coarse.tolerance = std::max(cfg.tolerance, 1e-8);
    std::vector<std::complex<double>> est(nfac);
    est[0] = zeta_value(s, coarse, height_ceiling);
    for (std::size_t i = 0; i < primitives.size(); ++i)
        est[i + 1] = lfunction_value(primitives[i], s, coarse, height_ceiling);

    // refine each factor to a per-factor absolute tolerance matching its
    // share of the relative budget
    std::complex<double> prod = 1.0;
    for (std::size_t i = 0; i < nfac; ++i) {
        EvalConfig fine = cfg;
        fine.tolerance = std::clamp(cfg.tolerance * std::abs(est[i]) / static_cast<double>(nfac),
                                    1e-12, 1e-3);
        prod *= i == 0 ? zeta_value(s, fine, height_ceiling)
                       : lfunction_value(primitives[i - 1], s, fine, height_ceiling);
    }
    return prod;
}

struct DirectValue {
    std::complex<double> value;
    double est_error; // heuristic bound, not a certificate
};

namespace detail {

// Width of the log-Gaussian cutoff used by the smooth direct sum.
inline constexpr double kSmoothTheta = 0.1;

inline double smooth_weight(double log_n, double log_x) {
    double arg = (log_n - log_x) / (M_SQRT2 * kSmoothTheta);
    if (arg <= -6.0) return 1.0;
    if (arg >= 6.0) return 0.0;
    return 0.5 * std::erfc(arg);
}

// Contour-shift heuristic for the smooth direct sum: minimizes over shift
// depth A the convexity estimate of the discarded integral.
inline double direct_error_heuristic(std::complex<double> s, std::uint64_t d, double x) {
    double t = std::abs(s.imag());
    double dd = conductor_product(d);
    double phi = static_cast<double>(euler_phi(d));
    double best = 1e300;
    for (int a = 1; a <= 14; ++a) {
        double da = static_cast<double>(a);
        // peak of ((t+v)/2pi)^(a*phi) * exp(-theta^2 v^2 / 2) over v >= 0
        double peak = 0.0;
        for (double v = 0.0; v <= 8.0 / kSmoothTheta; v += 1.0 / kSmoothTheta) {
            double val = da * phi * std::log((t + v + 4.0) / (2.0 * M_PI)) -
                         0.5 * kSmoothTheta * kSmoothTheta * v * v;
            peak = std::max(peak, val);
        }
        double log_est = -da * std::log(x) + 0.5 * kSmoothTheta * kSmoothTheta * da * da +
                         da * std::log(dd) + peak +
                         std::log(std::sqrt(2.0 * M_PI) / (kSmoothTheta * 2.0 * M_PI * da));
        best = std::min(best, std::exp(std::min(600.0, log_est)));
    }
    return best;
}

} // namespace detail

// Smallest length on a doubling ladder whose error heuristic clears the
// absolute target; used to size critical-strip direct sums.
inline std::uint64_t direct_length_for(std::complex<double> s, std::uint64_t d, double abs_target,
                                       std::uint64_t floor_x = 100'000) {
    std::uint64_t x = floor_x;
    while (detail::direct_error_heuristic(s, d, static_cast<double>(x)) > abs_target) {
        x *= 2;
        if (x > kDirectCoefficientCapacity / 3)
            throw std::runtime_error("direct_length_for: target needs more than the capacity");
    }
    return x;
}

// zeta_K(s) straight from the coefficient series: smoothly truncated sum
// with a log-Gaussian cutoff at X and the pole contribution subtracted.
// For Re(s) >= 1.25 a sharp truncation is also accepted. The est_error field
// carries the documented heuristic, not a proof.
inline DirectValue dedekind_zeta_direct(std::complex<double> s, std::uint64_t d, std::uint64_t x,
                                        const EvalConfig& cfg = {}) {
    validate_config(cfg);
    if (d < 3) throw std::invalid_argument("dedekind_zeta_direct: need d >= 3");
    if (x < 1) throw std::invalid_argument("dedekind_zeta_direct: need X >= 1");
    if (s.real() < 0.4) throw std::invalid_argument("dedekind_zeta_direct: Re(s) < 0.4");
    if (std::abs(s - 1.0) < 1e-10) throw std::domain_error("dedekind_zeta_direct: pole at s = 1");

    bool smooth = cfg.smoothing == Smoothing::kSmoothCutoff;
    if (s.real() < 1.25) {
        if (!smooth)
            throw std::invalid_argument(
                "dedekind_zeta_direct: the critical strip requires the smooth cutoff");
        if (std::abs(s.imag()) > 100.0)
            throw std::invalid_argument(
                "dedekind_zeta_direct: smooth cutoff supported only for |Im(s)| <= 100 in the strip");
    }

    double log_x = std::log(static_cast<double>(x));
    std::uint64_t limit =
        smooth ? static_cast<std::uint64_t>(
                     std::ceil(static_cast<double>(x) *
                               std::exp(6.0 * M_SQRT2 * detail::kSmoothTheta)))
               : x;
    if (limit > kDirectCoefficientCapacity)
        throw std::overflow_error("dedekind_zeta_direct: X exceeds the coefficient capacity");

    CompensatedSum re, im;
    for_each_coefficient_block(
        1, limit, d,
        [&](std::uint64_t n0, const std::vector<std::int64_t>& a, std::size_t len) {
            for (std::size_t i = 0; i < len; ++i) {
                if (a[i] == 0) continue;
                double n = static_cast<double>(n0 + i);
                double ln = std::log(n);
                double w = smooth ? detail::smooth_weight(ln, log_x) : 1.0;
                if (w == 0.0) continue;
                double mag = static_cast<double>(a[i]) * w * std::exp(-s.real() * ln);
                double phase = -s.imag() * ln;
                re.add(mag * std::cos(phase));
                im.add(mag * std::sin(phase));
            }
        });
    std::complex<double> value(re.value(), im.value());

    double est = 0.0;
    if (smooth) {
        if (x >= 16) {
            double rho = dedekind_residue(d, cfg);
            std::complex<double> w1 = 1.0 - s;
            std::complex<double> pole = rho *
                                        std::exp(0.5 * detail::kSmoothTheta * detail::kSmoothTheta *
                                                 w1 * w1) *
                                        std::exp(w1 * log_x) / w1;
            value -= pole;
            est = std::max(detail::direct_error_heuristic(s, d, static_cast<double>(x)),
                           1e-14 * std::abs(value)); // keep above the float-noise floor
        } else {
            est = 1.0; // tiny X: the smoothed sum is reported as-is
        }
    } else {
        // sharp tail: average order of a(n) is the residue
        double rho = dedekind_residue(d, cfg);
        est = rho * std::pow(static_cast<double>(x), 1.0 - s.real()) *
              (1.0 + 1.0 / (s.real() - 1.0));
    }
    return {value, est};
}

// One row per grid point: t, Re, Im, |value|, est_error.
inline void write_zeta_grid_csv(std::ostream& os, std::uint64_t d, const std::vector<double>& ts,
                                const EvalConfig& cfg = {}) {
    os << "t,re,im,abs,est_error\n";
    char buf[160];
    for (double t : ts) {
        auto v = dedekind_zeta_value({0.5, t}, d, cfg);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.3g\n", t, v.real(), v.imag(),
                      std::abs(v), cfg.tolerance);
        os << buf;
    }
}

} // namespace zetak
