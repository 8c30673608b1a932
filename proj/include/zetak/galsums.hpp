#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetak/dedekind.hpp"
#include "zetak/factored.hpp"
#include "zetak/resonator.hpp"
#include "zetak/util.hpp"

namespace zetak {

namespace detail {

// Row-compressed view of a set of factored integers over the union of their
// primes, with per-prime tables of a(p^e). Keeps the O(|M|^2) pair loops free
// of map lookups and order computations.
struct PackedSet {
    std::vector<std::uint64_t> basis;
    std::vector<double> log_basis;
    std::vector<std::vector<double>> a_pp; // a(p^e), e = 0..max exponent seen
    std::vector<std::uint32_t> offsets;    // CSR into entries
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries; // (basis idx, exp)
};

inline PackedSet pack_set(const std::vector<FactoredInteger>& m_set, std::uint64_t d) {
    PackedSet ps;
    std::map<std::uint64_t, std::uint32_t> max_exp;
    for (const auto& m : m_set)
        for (const auto& f : m.factors()) {
            auto& e = max_exp[f.prime];
            e = std::max(e, f.exp);
        }
    std::map<std::uint64_t, std::uint32_t> index;
    for (const auto& [p, e] : max_exp) {
        index[p] = static_cast<std::uint32_t>(ps.basis.size());
        ps.basis.push_back(p);
        ps.log_basis.push_back(std::log(static_cast<double>(p)));
        std::vector<double> table(e + 1, 1.0);
        for (std::uint32_t k = 1; k <= e; ++k)
            table[k] = d >= 3 ? static_cast<double>(coefficient_prime_power(p, k, d)) : 0.0;
        ps.a_pp.push_back(std::move(table));
    }
    ps.offsets.push_back(0);
    for (const auto& m : m_set) {
        for (const auto& f : m.factors())
            ps.entries.emplace_back(index[f.prime], f.exp);
        ps.offsets.push_back(static_cast<std::uint32_t>(ps.entries.size()));
    }
    return ps;
}

struct PairTerm {
    double ratio_log; // ln(gcd/lcm) <= 0
    double weight;    // a(m/(m,n)) a(n/(m,n)), or 1 for the plain sum
};

// Merge walk over two packed rows.
inline PairTerm pair_term(const PackedSet& ps, std::size_t i, std::size_t j, bool weighted) {
    PairTerm t{0.0, 1.0};
    std::uint32_t ai = ps.offsets[i], ae = ps.offsets[i + 1];
    std::uint32_t bi = ps.offsets[j], be = ps.offsets[j + 1];
    while (ai < ae || bi < be) {
        std::uint32_t idx;
        std::uint32_t ea = 0, eb = 0;
        if (bi == be || (ai < ae && ps.entries[ai].first < ps.entries[bi].first)) {
            idx = ps.entries[ai].first;
            ea = ps.entries[ai].second;
            ++ai;
        } else if (ai == ae || ps.entries[bi].first < ps.entries[ai].first) {
            idx = ps.entries[bi].first;
            eb = ps.entries[bi].second;
            ++bi;
        } else {
            idx = ps.entries[ai].first;
            ea = ps.entries[ai].second;
            eb = ps.entries[bi].second;
            ++ai;
            ++bi;
        }
        std::uint32_t lo = std::min(ea, eb), hi = std::max(ea, eb);
        if (lo != hi) t.ratio_log -= static_cast<double>(hi - lo) * ps.log_basis[idx];
        if (weighted) {
            if (ea > lo) t.weight *= ps.a_pp[idx][ea - lo];
            if (eb > lo) t.weight *= ps.a_pp[idx][eb - lo];
        }
    }
    return t;
}

// Sum of f(pair) over unordered off-diagonal pairs, doubled, plus the
// diagonal contribution |M| (every diagonal term equals 1 for both the plain
// and the weighted sums). Fixed-size row blocks keep the reduction order,
// and hence the bits, independent of the thread count.
template <class PairFn>
inline double pair_sum(const PackedSet& ps, std::size_t n, PairFn&& fn, int threads) {
    if (n == 0) return 0.0;
    const std::size_t block = 64;
    std::size_t n_blocks = (n + block - 1) / block;
    auto block_sum = [&](std::size_t b) {
        CompensatedSum s;
        for (std::size_t i = b * block; i < std::min(n, (b + 1) * block); ++i)
            for (std::size_t j = i + 1; j < n; ++j) s.add(fn(i, j));
        return s.value();
    };
    double off_diag = blocked_pair_reduce(n_blocks, block_sum, threads);
    return static_cast<double>(n) + 2.0 * off_diag;
}

} // namespace detail

// S_alpha(M) = sum over pairs of (gcd/lcm)^alpha.
inline double gal_sum(const std::vector<FactoredInteger>& m_set, double alpha, int threads = 1) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("gal_sum: alpha must be in (0, 1]");
    auto ps = detail::pack_set(m_set, 0);
    return detail::pair_sum(
        ps, m_set.size(),
        [&](std::size_t i, std::size_t j) {
            return std::exp(alpha * detail::pair_term(ps, i, j, false).ratio_log);
        },
        threads);
}

// S_alpha(M, a) = sum over pairs of a(m/(m,n)) a(n/(m,n)) (gcd/lcm)^alpha.
inline double gal_sum_weighted(const std::vector<FactoredInteger>& m_set, std::uint64_t d,
                               double alpha, int threads = 1) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("gal_sum_weighted: alpha must be in (0, 1]");
    if (d < 3) throw std::invalid_argument("gal_sum_weighted: need d >= 3");
    auto ps = detail::pack_set(m_set, d);
    return detail::pair_sum(
        ps, m_set.size(),
        [&](std::size_t i, std::size_t j) {
            auto t = detail::pair_term(ps, i, j, true);
            return t.weight * std::exp(alpha * t.ratio_log);
        },
        threads);
}

// Weighted sum restricted to pairs with lcm/gcd <= X.
inline double gal_sum_truncated(const std::vector<FactoredInteger>& m_set, std::uint64_t d,
                                double alpha, double x, int threads = 1) {
    if (x < 1.0) throw std::invalid_argument("gal_sum_truncated: need X >= 1");
    if (d < 3) throw std::invalid_argument("gal_sum_truncated: need d >= 3");
    double log_x = std::log(x) + 1e-12; // boundary pairs are kept
    auto ps = detail::pack_set(m_set, d);
    return detail::pair_sum(
        ps, m_set.size(),
        [&](std::size_t i, std::size_t j) {
            auto t = detail::pair_term(ps, i, j, true);
            if (-t.ratio_log > log_x) return 0.0;
            return t.weight * std::exp(alpha * t.ratio_log);
        },
        threads);
}

// Largest lcm/gcd ratio over all pairs, as a log.
inline double max_ratio_log(const std::vector<FactoredInteger>& m_set) {
    auto ps = detail::pack_set(m_set, 0);
    double best = 0.0;
    for (std::size_t i = 0; i < m_set.size(); ++i)
        for (std::size_t j = i + 1; j < m_set.size(); ++j)
            best = std::max(best, -detail::pair_term(ps, i, j, false).ratio_log);
    return best;
}

// Rankin bound: the truncated sum dominates S_1/2 - S_1/3 * X^{-1/6}.
inline bool rankin_check(const std::vector<FactoredInteger>& m_set, std::uint64_t d, double x,
                         int threads = 1) {
    double truncated = gal_sum_truncated(m_set, d, 0.5, x, threads);
    double s_half = gal_sum_weighted(m_set, d, 0.5, threads);
    double s_third = gal_sum_weighted(m_set, d, 1.0 / 3.0, threads);
    return truncated >= s_half - s_third * std::pow(x, -1.0 / 6.0) - 1e-9;
}

// sigma(a, R, r): sum of a(n)/sqrt(n) over squarefree divisors n of N_k with
// omega(n) <= R and (n, r) = 1, by depth-first enumeration.
inline double sigma_sum(const ResonatorParams& params, long k, long r_budget,
                        const FactoredInteger& coprime_to) {
    if (k < 1 || k > static_cast<long>(params.components.size()))
        throw std::invalid_argument("sigma_sum: level out of range");
    if (r_budget < 0) throw std::invalid_argument("sigma_sum: need R >= 0");
    const auto& comp = params.components[k - 1];
    std::vector<std::uint64_t> usable;
    for (auto p : comp.primes)
        if (coprime_to.exponent_of(p) == 0) usable.push_back(p);
    std::vector<double> contrib;
    for (auto p : usable)
        contrib.push_back(static_cast<double>(coefficient_prime_power(p, 1, params.d)) /
                          std::sqrt(static_cast<double>(p)));
    double total = 0.0;
    std::function<void(std::size_t, long, double)> rec = [&](std::size_t idx, long used,
                                                             double value) {
        total += value;
        if (used == r_budget) return;
        for (std::size_t next = idx; next < usable.size(); ++next)
            rec(next + 1, used + 1, value * contrib[next]);
    };
    rec(0, 0, 1.0);
    return total;
}

// Pair weight inequality for two elements of one component:
// a(m/(m,m')) a(m'/(m,m')) >= a'(l) a'(l') a(q) a(q') / (a'((l,l'))^2 a((q,q'))^2),
// compared exactly in rational arithmetic.
inline bool check_pair_weight_bound(const ResonatorParams& params, long k,
                                    const FactoredInteger& m, const FactoredInteger& m2) {
    if (k < 1 || k > static_cast<long>(params.components.size()))
        throw std::invalid_argument("check_pair_weight_bound: level out of range");
    const auto& comp = params.components[k - 1];
    auto [l, q] = decompose_element(m, comp);
    auto [l2, q2] = decompose_element(m2, comp);
    auto g = gcd(m, m2);
    Rational lhs = Rational(coefficient(m.divide_exact(g), params.d)) *
                   Rational(coefficient(m2.divide_exact(g), params.d));
    Rational rhs = coefficient_companion(l, params.d) * coefficient_companion(l2, params.d) *
                   Rational(coefficient(q, params.d)) * Rational(coefficient(q2, params.d)) /
                   coefficient_companion(gcd(l, l2), params.d).pow(2) /
                   Rational(coefficient(gcd(q, q2), params.d)).pow(2);
    return lhs >= rhs;
}

// Exact identities behind the pair bound: (m, m') = N_k (l, l') / [q, q'] and
// the cofactor splittings m/(m,m') = (l/(l,l')) (q'/(q,q')).
inline bool check_component_gcd_identity(const ResonatorParams& params, long k,
                                         const FactoredInteger& m, const FactoredInteger& m2) {
    if (k < 1 || k > static_cast<long>(params.components.size()))
        throw std::invalid_argument("check_component_gcd_identity: level out of range");
    const auto& comp = params.components[k - 1];
    auto [l, q] = decompose_element(m, comp);
    auto [l2, q2] = decompose_element(m2, comp);
    auto g = gcd(m, m2);
    auto expect = comp.nk.multiply(gcd(l, l2)).divide_exact(lcm(q, q2));
    if (!(g == expect)) return false;
    auto lg = gcd(l, l2), qg = gcd(q, q2);
    auto cof1 = l.divide_exact(lg).multiply(q2.divide_exact(qg));
    auto cof2 = l2.divide_exact(lg).multiply(q.divide_exact(qg));
    return m.divide_exact(g) == cof1 && m2.divide_exact(g) == cof2;
}

// Brute-force check, for tiny prime sets, that the weighted component sum
// dominates the separable double sum obtained from the pair weight bound.
inline bool check_component_lower_bound(const std::vector<std::uint64_t>& primes, long j_budget,
                                        std::uint64_t d) {
    if (primes.size() > 16)
        throw std::invalid_argument("check_component_lower_bound: brute force needs few primes");
    auto elements = build_component_elements(primes, j_budget);
    double lhs = gal_sum_weighted(elements, d, 0.5);

    std::size_t np = primes.size();
    long half = j_budget / 2;
    std::uint32_t masks = 1u << np;
    auto pop = [](std::uint32_t m) { return __builtin_popcount(m); };
    auto value = [&](std::uint32_t mask) {
        double v = 1.0;
        for (std::size_t i = 0; i < np; ++i)
            if (mask & (1u << i)) v *= static_cast<double>(primes[i]);
        return v;
    };
    auto fi_of = [&](std::uint32_t mask) {
        std::vector<PrimePower> f;
        for (std::size_t i = 0; i < np; ++i)
            if (mask & (1u << i)) f.push_back({primes[i], 1});
        return FactoredInteger::from_factors(std::move(f));
    };

    double rhs = 0.0;
    for (std::uint32_t lm = 0; lm < masks; ++lm) {
        if (pop(lm) > half) continue;
        for (std::uint32_t lm2 = 0; lm2 < masks; ++lm2) {
            if (pop(lm2) > half) continue;
            auto lg = fi_of(lm & lm2);
            double outer = std::exp(lg.log_value()) *
                           (coefficient_companion(fi_of(lm), d) *
                            coefficient_companion(fi_of(lm2), d) /
                            coefficient_companion(lg, d).pow(2))
                               .to_double() /
                           std::sqrt(value(lm) * value(lm2));
            double inner = 0.0;
            for (std::uint32_t qm = 0; qm < masks; ++qm) {
                if (pop(qm) > half || (qm & lm)) continue;
                for (std::uint32_t qm2 = 0; qm2 < masks; ++qm2) {
                    if (pop(qm2) > half || (qm2 & lm2)) continue;
                    auto qg = fi_of(qm & qm2);
                    inner += std::exp(qg.log_value()) *
                             static_cast<double>(coefficient(fi_of(qm), d)) *
                             static_cast<double>(coefficient(fi_of(qm2), d)) /
                             (static_cast<double>(coefficient(qg, d)) *
                              static_cast<double>(coefficient(qg, d))) /
                             std::sqrt(value(qm) * value(qm2));
                }
            }
            rhs += outer * inner;
        }
    }
    return lhs >= rhs - 1e-9 * std::abs(rhs);
}

struct SigmaRow {
    int k;
    long j_lower;
    double sigma_exact;  // sigma(a, j_k, 1)
    double t_sigma;      // main term of the reference expression
    double t_sigma_pow;  // t_sigma^{j_k}
};

struct GalSumReport {
    std::uint64_t d = 0;
    std::uint64_t n = 0;
    std::size_t m_size = 0;
    double s_half_weighted = 0.0;
    double s_third_weighted = 0.0;
    std::optional<double> s_alpha_plain;
    std::map<double, double> truncated; // cutoff X -> truncated S_1/2(M, a)
    double normalized = 0.0;
    double beta_empirical = 0.0;
    double beta_theoretical = 0.0;
    double h = 0.0;
    double lcal_n = 0.0;
    std::vector<SigmaRow> sigma_rows;
};

// Full report on a constructed set. The alpha knob only enters the
// informational T_sigma comparison (the reference expression leaves it
// unbound; 1/2 matches the exponent of the main sums).
inline GalSumReport make_report(const ResonatorSet& set, int threads = 1,
                                std::optional<double> plain_alpha = std::nullopt,
                                int truncation_points = 8, double t_sigma_alpha = 0.5) {
    const auto& params = set.params;
    GalSumReport rep;
    rep.d = params.d;
    rep.n = params.n;
    rep.m_size = set.elements.size();
    rep.s_half_weighted = gal_sum_weighted(set.elements, params.d, 0.5, threads);
    rep.s_third_weighted = gal_sum_weighted(set.elements, params.d, 1.0 / 3.0, threads);
    if (plain_alpha) rep.s_alpha_plain = gal_sum(set.elements, *plain_alpha, threads);

    double max_rl = max_ratio_log(set.elements);
    for (int i = 0; i < truncation_points; ++i) {
        double lx = max_rl * (i + 1) / truncation_points;
        double x = std::exp(lx);
        rep.truncated[x] = gal_sum_truncated(set.elements, params.d, 0.5, x, threads);
    }

    rep.normalized = rep.s_half_weighted / static_cast<double>(rep.m_size);
    rep.lcal_n = growth_scale(static_cast<double>(params.n));
    rep.beta_empirical = std::log(rep.normalized) / std::log(rep.lcal_n);
    rep.h = h_parameter(params.u, params.b);
    double phi = static_cast<double>(euler_phi(params.d));
    rep.beta_theoretical =
        2.0 * params.gamma * phi * params.lambda * std::log(rep.h / (params.lambda * params.lambda));

    double l3 = iterated_log(static_cast<double>(params.n), 3);
    for (const auto& comp : params.components) {
        SigmaRow row;
        row.k = comp.k;
        row.j_lower = comp.j_lower;
        row.sigma_exact = sigma_sum(params, comp.k, comp.j_lower, FactoredInteger());
        row.t_sigma = 2.0 * comp.k * M_E * (std::sqrt(params.u) - 1.0) *
                      std::pow(params.u, comp.k / 2.0) / t_sigma_alpha * std::sqrt(l3);
        row.t_sigma_pow = std::pow(row.t_sigma, static_cast<double>(comp.j_lower));
        rep.sigma_rows.push_back(row);
    }
    return rep;
}

inline std::string report_to_text(const GalSumReport& rep) {
    std::ostringstream os;
    char buf[160];
    auto kv = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
        os << buf;
    };
    os << "d = " << rep.d << "\nN = " << rep.n << "\nm_size = " << rep.m_size << "\n";
    kv("s_half_weighted", rep.s_half_weighted);
    kv("s_third_weighted", rep.s_third_weighted);
    if (rep.s_alpha_plain) kv("s_alpha_plain", *rep.s_alpha_plain);
    kv("normalized", rep.normalized);
    kv("beta_empirical", rep.beta_empirical);
    kv("beta_theoretical", rep.beta_theoretical);
    kv("h", rep.h);
    kv("lcal_n", rep.lcal_n);
    for (const auto& [x, v] : rep.truncated) {
        std::snprintf(buf, sizeof buf, "truncated[%.6g] = %.17g\n", x, v);
        os << buf;
    }
    for (const auto& row : rep.sigma_rows) {
        std::snprintf(buf, sizeof buf, "sigma_exact[k=%d, j=%ld] = %.17g, T_sigma^j = %.6g\n",
                      row.k, row.j_lower, row.sigma_exact, row.t_sigma_pow);
        os << buf;
    }
    return os.str();
}

inline std::string report_csv_header() {
    return "d,N,m_size,s_half,s_third,normalized,beta_empirical,beta_theoretical,h,lcal_n";
}

inline std::string report_csv_row(const GalSumReport& rep) {
    char buf[400];
    std::snprintf(buf, sizeof buf, "%llu,%llu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                  static_cast<unsigned long long>(rep.d), static_cast<unsigned long long>(rep.n),
                  rep.m_size, rep.s_half_weighted, rep.s_third_weighted, rep.normalized,
                  rep.beta_empirical, rep.beta_theoretical, rep.h, rep.lcal_n);
    return buf;
}

} // namespace zetak
