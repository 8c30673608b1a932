#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetak/arith.hpp"
#include "zetak/factored.hpp"
#include "zetak/primes.hpp"
#include "zetak/util.hpp"

namespace zetak {

inline constexpr double kDefaultU = M_E;
inline constexpr double kDefaultB = 1.01;
inline constexpr double kDefaultGamma = 0.3;

inline double h_parameter(double u, double b) {
    return M_E * M_E * b * (std::sqrt(u) - 1.0) / (std::sqrt(u) + 1.0);
}

// The lambda maximizing 2 gamma phi(d) lambda log(h / lambda^2).
inline double default_lambda(double u, double b) { return std::sqrt(h_parameter(u, b)) / M_E; }

// Level-k data: primes of I_k, the even split budget J_k, the lower-bound
// count j_k, and N_k as the product of the interval primes.
struct ComponentData {
    int k = 0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    std::vector<std::uint64_t> primes; // I_k, ascending
    long p_count = 0;                  // P_k = |I_k|
    long j_budget = 0;                 // J_k
    long j_lower = 0;                  // j_k
    FactoredInteger nk;
};

struct ResonatorParams {
    std::uint64_t d = 3;
    std::uint64_t n = 0;
    double u = kDefaultU;
    double b = kDefaultB;
    double gamma = kDefaultGamma;
    double lambda = 0.0;
    long k_levels = 0;
    bool d_outside_regime = false; // d > (log2 N)^2, construction degenerates
    std::vector<ComponentData> components;
};

inline ResonatorParams build_params(std::uint64_t d, std::uint64_t n, double u = kDefaultU,
                                    double b = kDefaultB, double gamma = kDefaultGamma,
                                    double lambda = 0.0,
                                    std::uint64_t capacity = kDefaultSieveCapacity) {
    if (d < 3) throw std::invalid_argument("build_params: need d >= 3");
    if (n <= 16) throw std::invalid_argument("build_params: need N > 16");
    if (!(u > 1.0 && u <= M_E)) throw std::invalid_argument("build_params: need u in (1, e]");
    if (!(b > 1.0)) throw std::invalid_argument("build_params: need b > 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("build_params: need gamma in (0, 1)");
    if (!(b * gamma < 1.0 / std::log(u)))
        throw std::invalid_argument("build_params: admissibility b*gamma < 1/log(u) violated");
    if (lambda == 0.0) lambda = default_lambda(u, b);
    if (!(lambda > 0.0)) throw std::invalid_argument("build_params: need lambda > 0");

    double nd = static_cast<double>(n);
    double l1 = std::log(nd), l2 = std::log(l1), l3 = std::log(l2);
    double phi = static_cast<double>(euler_phi(d));

    ResonatorParams params;
    params.d = d;
    params.n = n;
    params.u = u;
    params.b = b;
    params.gamma = gamma;
    params.lambda = lambda;
    double levels = std::floor(std::pow(l2, gamma * phi));
    // resource guard: the level count is exponential in gamma*phi(d) and all
    // levels past the sieve capacity would be empty anyway
    if (!(levels <= 10000.0))
        throw std::overflow_error("build_params: level count out of the supported regime");
    params.k_levels = static_cast<long>(levels);
    params.d_outside_regime = static_cast<double>(d) > l2 * l2;

    for (long k = 1; k <= params.k_levels; ++k) {
        ComponentData comp;
        comp.k = static_cast<int>(k);
        comp.interval_lo = std::pow(u, static_cast<double>(k)) * l1 * l2;
        comp.interval_hi = std::pow(u, static_cast<double>(k + 1)) * l1 * l2;
        comp.primes = sieve_primes_in_ap(comp.interval_lo, comp.interval_hi, d, 1, capacity);
        comp.p_count = static_cast<long>(comp.primes.size());
        comp.j_budget =
            2 * static_cast<long>(std::floor(b * l1 / (2.0 * static_cast<double>(k) * k * phi * l3)));
        comp.j_lower = static_cast<long>(
            std::floor(lambda / static_cast<double>(k) * std::sqrt(l1 / (l2 * l3))));
        std::vector<PrimePower> nk;
        for (auto p : comp.primes) nk.push_back({p, 1});
        comp.nk = FactoredInteger::from_factors(std::move(nk));
        params.components.push_back(std::move(comp));
    }
    return params;
}

// All elements (l/q) N_k with lq | N_k, disjoint squarefree l and q, and
// omega(l), omega(q) <= J_k/2. Primes in l appear squared in the element,
// primes in q disappear, the rest stay to the first power.
inline std::vector<FactoredInteger> build_component_elements(
    const std::vector<std::uint64_t>& primes, long j_budget, std::uint64_t max_candidates = 0) {
    long half = j_budget / 2;
    std::vector<FactoredInteger> out;
    std::vector<std::uint32_t> exps(primes.size(), 1);
    std::uint64_t produced = 0;
    // walk the primes, assigning each to l (exp 2), q (exp 0) or neither
    std::function<void(std::size_t, long, long)> rec = [&](std::size_t idx, long lc, long qc) {
        if (idx == primes.size()) {
            std::vector<PrimePower> factors;
            for (std::size_t i = 0; i < primes.size(); ++i)
                if (exps[i] > 0) factors.push_back({primes[i], exps[i]});
            out.push_back(FactoredInteger::from_factors(std::move(factors)));
            if (max_candidates && ++produced > max_candidates)
                throw std::runtime_error("build_component_elements: enumeration guard exceeded");
            return;
        }
        rec(idx + 1, lc, qc);
        if (lc < half) {
            exps[idx] = 2;
            rec(idx + 1, lc + 1, qc);
        }
        if (qc < half) {
            exps[idx] = 0;
            rec(idx + 1, lc, qc + 1);
        }
        exps[idx] = 1;
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

struct ResonatorSet {
    ResonatorParams params;
    std::vector<std::vector<FactoredInteger>> components;
    std::vector<FactoredInteger> elements; // deduplicated, ascending
};

// Assembles M as the product set of the per-level components. Aborts if the
// intermediate enumeration would exceed guard_factor * N candidates, and
// rejects any outcome with |M| > N as a construction bug.
inline ResonatorSet build_set(const ResonatorParams& params, std::uint64_t guard_factor = 10) {
    ResonatorSet set;
    set.params = params;
    std::uint64_t guard = guard_factor * params.n;

    double projected = 1.0;
    for (const auto& comp : params.components) {
        set.components.push_back(build_component_elements(comp.primes, comp.j_budget, guard));
        projected *= static_cast<double>(set.components.back().size());
        if (projected > static_cast<double>(guard))
            throw std::runtime_error("build_set: enumeration guard exceeded before deduplication");
    }

    std::vector<FactoredInteger> acc{FactoredInteger()};
    for (const auto& level : set.components) {
        if (level.size() == 1 && level.front().is_one()) continue;
        std::vector<FactoredInteger> next;
        next.reserve(acc.size() * level.size());
        for (const auto& a : acc)
            for (const auto& m : level) next.push_back(a.multiply(m));
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    if (acc.size() > params.n)
        throw std::runtime_error("build_set: |M| exceeds N, construction is out of regime");
    set.elements = std::move(acc);
    return set;
}

// Recover (l, q) for an element of level k; errors if the element is not of
// the canonical component form.
inline std::pair<FactoredInteger, FactoredInteger> decompose_element(const FactoredInteger& m,
                                                                     const ComponentData& comp) {
    std::vector<PrimePower> l_factors, q_factors;
    for (auto p : comp.primes) {
        std::uint32_t e = m.exponent_of(p);
        if (e == 2)
            l_factors.push_back({p, 1});
        else if (e == 0)
            q_factors.push_back({p, 1});
        else if (e != 1)
            throw std::invalid_argument("decompose_element: exponent out of range");
    }
    for (const auto& f : m.factors())
        if (std::find(comp.primes.begin(), comp.primes.end(), f.prime) == comp.primes.end())
            throw std::invalid_argument("decompose_element: prime outside the component interval");
    auto l = FactoredInteger::from_factors(std::move(l_factors));
    auto q = FactoredInteger::from_factors(std::move(q_factors));
    if (2 * l.omega() > comp.j_budget || 2 * q.omega() > comp.j_budget)
        throw std::invalid_argument("decompose_element: budget violated");
    return {l, q};
}

// pi(x, d, 1) * phi(d) / pi(x), both counts exact by sieve.
inline double siegel_walfisz_ratio(double x, std::uint64_t d,
                                   std::uint64_t capacity = kDefaultSieveCapacity) {
    if (x < 1000.0) throw std::invalid_argument("siegel_walfisz_ratio: need x >= 1000");
    auto all = sieve_primes(0.0, x, capacity);
    std::uint64_t in_class = 0;
    for (auto p : all)
        if (p % d == 1) ++in_class;
    return static_cast<double>(in_class) * static_cast<double>(euler_phi(d)) /
           static_cast<double>(all.size());
}

// --- serialization -------------------------------------------------------

inline std::string serialize_set(const ResonatorSet& set) {
    std::ostringstream body;
    char buf[128];
    const auto& p = set.params;
    body << "d " << p.d << "\nN " << p.n << "\n";
    std::snprintf(buf, sizeof buf, "u %.17g\nb %.17g\ngamma %.17g\nlambda %.17g\n", p.u, p.b,
                  p.gamma, p.lambda);
    body << buf << "k_levels " << p.k_levels << "\n";
    for (const auto& comp : p.components) {
        body << "component " << comp.k << " J " << comp.j_budget << " j " << comp.j_lower
             << " P " << comp.p_count << " primes";
        for (auto q : comp.primes) body << ' ' << q;
        body << "\n";
    }
    body << "elements " << set.elements.size() << "\n";
    for (const auto& m : set.elements) body << m.to_string() << "\n";
    std::string payload = body.str();
    std::ostringstream out;
    out << "zetak-resonator-set v1\nhash " << std::hex << fnv1a64(payload) << std::dec << "\n"
        << payload;
    return out.str();
}

inline ResonatorSet parse_set(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "zetak-resonator-set v1")
        throw std::runtime_error("parse_set: bad header");
    if (!std::getline(is, line) || line.rfind("hash ", 0) != 0)
        throw std::runtime_error("parse_set: missing hash");
    std::uint64_t stored_hash = std::stoull(line.substr(5), nullptr, 16);
    std::string payload((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (fnv1a64(payload) != stored_hash)
        throw std::runtime_error("parse_set: content hash mismatch, cache is corrupt");

    std::istringstream body(payload);
    ResonatorSet set;
    auto expect_kv = [&](const std::string& key) {
        std::string k;
        body >> k;
        if (k != key) throw std::runtime_error("parse_set: expected key " + key);
    };
    expect_kv("d");
    body >> set.params.d;
    expect_kv("N");
    body >> set.params.n;
    expect_kv("u");
    body >> set.params.u;
    expect_kv("b");
    body >> set.params.b;
    expect_kv("gamma");
    body >> set.params.gamma;
    expect_kv("lambda");
    body >> set.params.lambda;
    expect_kv("k_levels");
    body >> set.params.k_levels;
    for (long k = 1; k <= set.params.k_levels; ++k) {
        ComponentData comp;
        std::string key;
        body >> key;
        if (key != "component") throw std::runtime_error("parse_set: expected component");
        body >> comp.k;
        expect_kv("J");
        body >> comp.j_budget;
        expect_kv("j");
        body >> comp.j_lower;
        expect_kv("P");
        body >> comp.p_count;
        expect_kv("primes");
        std::getline(body, line);
        std::istringstream ps(line);
        std::uint64_t q;
        while (ps >> q) comp.primes.push_back(q);
        if (static_cast<long>(comp.primes.size()) != comp.p_count)
            throw std::runtime_error("parse_set: prime count mismatch");
        std::vector<PrimePower> nk;
        for (auto pr : comp.primes) nk.push_back({pr, 1});
        comp.nk = FactoredInteger::from_factors(std::move(nk));
        set.params.components.push_back(std::move(comp));
        set.components.push_back(
            build_component_elements(set.params.components.back().primes,
                                     set.params.components.back().j_budget));
    }
    expect_kv("elements");
    std::size_t count;
    body >> count;
    std::getline(body, line);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(body, line)) throw std::runtime_error("parse_set: truncated elements");
        set.elements.push_back(FactoredInteger::parse(line));
    }
    return set;
}

} // namespace zetak
