#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "zetak/arith.hpp"
#include "zetak/characters.hpp"
#include "zetak/rational.hpp"

namespace zetak {

// Decomposition of a rational prime in the d-th cyclotomic field:
// e * f * g = phi(d) with ramification index e, residue degree f and g
// primes above p.
struct SplittingData {
    std::uint64_t p;
    std::uint64_t d;
    std::uint64_t e;
    std::uint64_t f;
    std::uint64_t g;
};

inline SplittingData splitting_data(std::uint64_t p, std::uint64_t d) {
    if (d < 3) throw std::invalid_argument("splitting_data: need d >= 3");
    if (!is_prime_u64(p)) throw std::invalid_argument("splitting_data: p is not prime");
    SplittingData s{p, d, 1, 1, 1};
    if (d % p != 0) {
        s.e = 1;
        s.f = multiplicative_order(p, d);
        s.g = euler_phi(d) / s.f;
    } else {
        std::uint64_t pv = 1, m = d;
        while (m % p == 0) {
            m /= p;
            pv *= p;
        }
        s.e = euler_phi(pv);
        s.f = multiplicative_order(p, m);
        s.g = euler_phi(m) / s.f;
    }
    return s;
}

// Ideal count of norm p^k: the number of ways to distribute k/f over the g
// primes above p, zero unless f | k.
inline std::int64_t coefficient_prime_power(std::uint64_t p, std::uint32_t k, std::uint64_t d) {
    if (k < 1) throw std::invalid_argument("coefficient_prime_power: need k >= 1");
    auto s = splitting_data(p, d);
    if (k % s.f != 0) return 0;
    return static_cast<std::int64_t>(compositions_count(k / s.f, s.g));
}

// Multiplicative extension over the exponent vector; a(1) = 1.
inline std::int64_t coefficient(const FactoredInteger& n, std::uint64_t d) {
    __int128 acc = 1;
    for (const auto& f : n.factors()) {
        acc *= coefficient_prime_power(f.prime, f.exp, d);
        if (acc > INT64_MAX) throw std::overflow_error("coefficient: value exceeds 2^63");
        if (acc == 0) return 0;
    }
    return static_cast<std::int64_t>(acc);
}

// a(1..n_max) by sieving on the smallest prime factor.
inline std::vector<std::int64_t> coefficient_table(std::uint64_t n_max, std::uint64_t d) {
    if (d < 3) throw std::invalid_argument("coefficient_table: need d >= 3");
    std::vector<std::uint32_t> spf(n_max + 1, 0);
    for (std::uint64_t p = 2; p <= n_max; ++p) {
        if (spf[p]) continue;
        for (std::uint64_t m = p; m <= n_max; m += p)
            if (!spf[m]) spf[m] = static_cast<std::uint32_t>(p);
    }
    std::vector<std::int64_t> a(n_max + 1, 0);
    if (n_max >= 1) a[1] = 1;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        std::uint64_t p = spf[n], m = n;
        std::uint32_t e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        a[n] = a[m] * coefficient_prime_power(p, e, d);
    }
    return a;
}

// Streams a(n) for n in [lo, hi] in blocks without a full table: the block
// callback receives (n0, values, len) with values[i] = a(n0 + i).
template <class Fn>
inline void for_each_coefficient_block(std::uint64_t lo, std::uint64_t hi, std::uint64_t d, Fn&& fn) {
    if (d < 3) throw std::invalid_argument("for_each_coefficient_block: need d >= 3");
    if (lo < 1) lo = 1;
    if (hi < lo) return;
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    auto base = primes_up_to(root);
    // per base prime, a(p^e) for every exponent that can occur below hi
    std::vector<std::vector<std::int64_t>> pp_value(base.size());
    for (std::size_t bi = 0; bi < base.size(); ++bi) {
        double lp = std::log(static_cast<double>(base[bi]));
        auto max_e = static_cast<std::uint32_t>(std::log(static_cast<double>(hi)) / lp) + 1;
        pp_value[bi].resize(max_e + 1, 1);
        for (std::uint32_t e = 1; e <= max_e; ++e)
            pp_value[bi][e] = coefficient_prime_power(base[bi], e, d);
    }
    // a(p) for a prime with p > sqrt(hi) depends only on p mod d
    std::vector<std::int64_t> residue_value(d, 0);
    std::uint64_t phi_d = euler_phi(d);
    for (std::uint64_t r = 0; r < d; ++r)
        if (r % d == 1 % d) residue_value[r] = static_cast<std::int64_t>(phi_d);

    const std::uint64_t seg = 1 << 20;
    std::vector<std::uint64_t> rem(seg);
    std::vector<std::int64_t> acc(seg);
    for (std::uint64_t low = lo; low <= hi; low += seg) {
        std::uint64_t high = std::min(hi, low + seg - 1);
        std::size_t len = high - low + 1;
        for (std::size_t i = 0; i < len; ++i) {
            rem[i] = low + i;
            acc[i] = 1;
        }
        for (std::size_t bi = 0; bi < base.size(); ++bi) {
            std::uint64_t p = base[bi];
            if (p > high) break;
            for (std::uint64_t m = ((low + p - 1) / p) * p; m <= high; m += p) {
                std::size_t i = m - low;
                std::uint32_t e = 0;
                while (rem[i] % p == 0) {
                    rem[i] /= p;
                    ++e;
                }
                if (e) acc[i] *= pp_value[bi][e];
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            if (rem[i] > 1) {
                // leftover prime factor above sqrt(hi)
                acc[i] *= rem[i] > d ? residue_value[rem[i] % d]
                                     : coefficient_prime_power(rem[i], 1, d);
            }
        }
        if (low == 1) acc[0] = 1;
        fn(low, acc, len);
    }
}

// Independent route to the same coefficients: Dirichlet convolution of the
// unit series with the series of every inducing primitive character. Any
// entry off an integer by more than 1e-6 signals a character or conductor
// bug and is reported as an error.
inline std::vector<std::int64_t> coefficient_oracle(std::uint64_t n_max, std::uint64_t d) {
    if (d < 3) throw std::invalid_argument("coefficient_oracle: need d >= 3");
    if (n_max < 1) throw std::invalid_argument("coefficient_oracle: need n_max >= 1");
    std::vector<std::complex<double>> acc(n_max + 1, 0.0);
    for (std::uint64_t n = 1; n <= n_max; ++n) acc[n] = 1.0; // zeta factor
    for (const auto& chi : character_group(d)) {
        if (chi.is_principal()) continue;
        auto [f, star] = conductor_and_primitive(chi);
        std::vector<std::complex<double>> next(n_max + 1, 0.0);
        for (std::uint64_t m = 1; m <= n_max; ++m) {
            if (acc[m] == std::complex<double>(0.0)) continue;
            for (std::uint64_t k = 1; m * k <= n_max; ++k) {
                auto v = star(k);
                if (v != std::complex<double>(0.0)) next[m * k] += acc[m] * v;
            }
        }
        acc = std::move(next);
    }
    std::vector<std::int64_t> out(n_max + 1, 0);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        double re = acc[n].real(), im = acc[n].imag();
        double rounded = std::round(re);
        if (std::abs(im) > 1e-6 || std::abs(re - rounded) > 1e-6)
            throw std::runtime_error("coefficient_oracle: non-integer coefficient at n = " +
                                     std::to_string(n));
        out[n] = static_cast<std::int64_t>(rounded);
    }
    return out;
}

// The companion multiplicative weight ((phi(d)+1)/2)^omega(n), exact.
inline Rational coefficient_companion(const FactoredInteger& n, std::uint64_t d) {
    if (d < 3) throw std::invalid_argument("coefficient_companion: need d >= 3");
    return Rational(static_cast<std::int64_t>(euler_phi(d)) + 1, 2)
        .pow(static_cast<std::uint32_t>(n.omega()));
}

// a(mn) >= a'(m) a(n) for squarefree m, n built from primes = 1 (mod d).
// Exact rational comparison; precondition violations are errors.
inline bool check_coefficient_product_bound(const FactoredInteger& m, const FactoredInteger& n,
                                            std::uint64_t d) {
    auto validate = [&](const FactoredInteger& x) {
        if (!x.is_squarefree())
            throw std::invalid_argument("check_coefficient_product_bound: argument not squarefree");
        for (const auto& f : x.factors())
            if (f.prime % d != 1)
                throw std::invalid_argument(
                    "check_coefficient_product_bound: prime factor not 1 mod d");
    };
    validate(m);
    validate(n);
    Rational lhs(coefficient(m.multiply(n), d));
    Rational rhs = coefficient_companion(m, d) * Rational(coefficient(n, d));
    return lhs >= rhs;
}

inline void write_coefficient_csv(std::ostream& os, const std::vector<std::int64_t>& table) {
    os << "n,a\n";
    for (std::size_t n = 1; n < table.size(); ++n) os << n << ',' << table[n] << '\n';
}

inline std::vector<std::int64_t> read_coefficient_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "n,a")
        throw std::runtime_error("read_coefficient_csv: bad header");
    std::vector<std::int64_t> table(1, 0);
    while (std::getline(is, line)) {
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("read_coefficient_csv: bad row");
        std::uint64_t n = std::stoull(line.substr(0, comma));
        if (n != table.size()) throw std::runtime_error("read_coefficient_csv: rows out of order");
        table.push_back(std::stoll(line.substr(comma + 1)));
    }
    return table;
}

} // namespace zetak
