#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zetak/galsums.hpp"
#include "zetak/lfunc.hpp"
#include "zetak/resonator.hpp"
#include "zetak/util.hpp"

namespace zetak {

// One geometric bucket ((1+1/T)^j, (1+1/T)^{j+1}]: h is its smallest member
// of M and r^2 the member count.
struct BucketData {
    long index = 0;
    FactoredInteger h;
    double log_h = 0.0;
    double r = 0.0;
};

struct ResonatorBuckets {
    double T = 0.0;
    std::vector<BucketData> buckets;
};

inline ResonatorBuckets build_buckets(const ResonatorSet& set, double T) {
    if (!(T > 16.0)) throw std::invalid_argument("build_buckets: need T > 16");
    ResonatorBuckets rb;
    rb.T = T;
    double delta = std::log1p(1.0 / T);
    for (const auto& m : set.elements) { // ascending, so the first of a bucket is its minimum
        long j = static_cast<long>(std::floor(m.log_value() / delta));
        if (rb.buckets.empty() || rb.buckets.back().index != j) {
            BucketData b;
            b.index = j;
            b.h = m;
            b.log_h = m.log_value();
            b.r = 1.0;
            rb.buckets.push_back(std::move(b));
        } else {
            // r^2 counts members; keep r as the live value
            double r2 = rb.buckets.back().r * rb.buckets.back().r + 1.0;
            rb.buckets.back().r = std::sqrt(r2);
        }
    }
    return rb;
}

// R(t) = sum_j r(h_j) h_j^{-it}.
inline std::complex<double> resonator_value(double t, const ResonatorBuckets& rb) {
    CompensatedSum re, im;
    for (const auto& b : rb.buckets) {
        double phase = -t * b.log_h;
        re.add(b.r * std::cos(phase));
        im.add(b.r * std::sin(phase));
    }
    return {re.value(), im.value()};
}

struct SearchResult {
    double t_star = 0.0;
    double zeta_abs = 0.0;
    double baseline_max = 0.0;
    double reference = 0.0; // growth_scale(T)^phi(d)
    long budget = 0;
    std::uint64_t seed = 0;
};

namespace detail {

template <class Fn>
inline void parallel_map(std::size_t n, int threads, Fn&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t n_threads =
        threads <= 1 ? 1 : std::min<std::size_t>(n, threads > 0 ? threads : (hw ? hw : 1u));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t)
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += n_threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

// Resonator-guided maximum hunt for |zeta_K(1/2 + it)| on [0, T]:
//   1. score a coarse grid of 50*budget points by |R(t)|^2 Phi(t log T / T),
//   2. spend the evaluation budget on the best-scored points,
//   3. golden-section refine around the winner,
//   4. rerun a uniform-random baseline at the same total evaluation count.
inline SearchResult search_large_values(std::uint64_t d, double T, const ResonatorSet& set,
                                        long budget, std::uint64_t seed, const EvalConfig& cfg = {},
                                        int threads = 1) {
    if (budget < 10) throw std::invalid_argument("search_large_values: need budget >= 10");
    if (!(T > 16.0 && T <= kDefaultHeightCeiling))
        throw std::invalid_argument("search_large_values: T outside the supported height range");

    auto rb = build_buckets(set, T);
    double log_t = std::log(T);
    auto zeta_abs_at = [&](double t) { return std::abs(dedekind_zeta_value({0.5, t}, d, cfg)); };

    // 1. coarse scoring
    std::size_t grid_n = static_cast<std::size_t>(50) * static_cast<std::size_t>(budget);
    double spacing = T / static_cast<double>(grid_n);
    std::vector<double> score(grid_n);
    detail::parallel_map(grid_n, threads, [&](std::size_t i) {
        double t = (static_cast<double>(i) + 0.5) * spacing;
        double x = t * log_t / T;
        score[i] = std::norm(resonator_value(t, rb)) * std::exp(-0.5 * x * x);
    });

    std::vector<std::size_t> order(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) order[i] = i;
    std::size_t keep = std::min<std::size_t>(budget, grid_n);
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return score[a] != score[b] ? score[a] > score[b] : a < b;
                      });

    // 2. evaluate the selected points
    std::vector<double> zeta_at(keep);
    detail::parallel_map(keep, threads, [&](std::size_t i) {
        double t = (static_cast<double>(order[i]) + 0.5) * spacing;
        zeta_at[i] = zeta_abs_at(t);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < keep; ++i)
        if (zeta_at[i] > zeta_at[best]) best = i;
    double t_best = (static_cast<double>(order[best]) + 0.5) * spacing;
    double z_best = zeta_at[best];

    // 3. golden-section refinement around the winner
    long refine_evals = 0;
    {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = std::max(0.0, t_best - spacing), b = std::min(T, t_best + spacing);
        double c = b - inv_phi * (b - a), e = a + inv_phi * (b - a);
        double fc = zeta_abs_at(c), fe = zeta_abs_at(e);
        refine_evals += 2;
        while (b - a > 1e-9 * T) {
            if (fc > fe) {
                b = e;
                e = c;
                fe = fc;
                c = b - inv_phi * (b - a);
                fc = zeta_abs_at(c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + inv_phi * (b - a);
                fe = zeta_abs_at(e);
            }
            ++refine_evals;
        }
        double t_mid = 0.5 * (a + b);
        double z_mid = zeta_abs_at(t_mid);
        ++refine_evals;
        if (z_mid > z_best) {
            z_best = z_mid;
            t_best = t_mid;
        }
    }

    // 4. random baseline at the same total evaluation count
    long baseline_budget = static_cast<long>(keep) + refine_evals;
    std::vector<double> baseline(baseline_budget);
    detail::parallel_map(static_cast<std::size_t>(baseline_budget), threads, [&](std::size_t i) {
        baseline[i] = zeta_abs_at(uniform01(seed, i) * T);
    });
    double baseline_max = 0.0;
    for (double z : baseline) baseline_max = std::max(baseline_max, z);

    SearchResult result;
    result.t_star = t_best;
    result.zeta_abs = z_best;
    result.baseline_max = baseline_max;
    result.reference = std::pow(growth_scale(T), static_cast<double>(euler_phi(d)));
    result.budget = budget;
    result.seed = seed;
    return result;
}

inline std::string search_csv_header() {
    return "seed,T,d,budget,t_star,zeta_abs,baseline_max,reference";
}

inline std::string search_csv_row(const SearchResult& r, double T, std::uint64_t d) {
    char buf[300];
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%llu,%ld,%.17g,%.17g,%.17g,%.17g",
                  static_cast<unsigned long long>(r.seed), T, static_cast<unsigned long long>(d),
                  r.budget, r.t_star, r.zeta_abs, r.baseline_max, r.reference);
    return buf;
}

inline std::string search_to_text(const SearchResult& r) {
    std::ostringstream os;
    char buf[100];
    auto kv = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", k, v);
        os << buf;
    };
    kv("t_star", r.t_star);
    kv("zeta_abs", r.zeta_abs);
    kv("baseline_max", r.baseline_max);
    kv("reference", r.reference);
    os << "budget = " << r.budget << "\nseed = " << r.seed << "\n";
    return os.str();
}

} // namespace zetak
