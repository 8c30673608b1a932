#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "zetak/factored.hpp"
#include "zetak/primes.hpp"

namespace zetak {

inline std::uint64_t euler_phi(std::uint64_t d) {
    if (d < 1) throw std::invalid_argument("euler_phi: argument must be >= 1");
    std::uint64_t result = d, n = d;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        result -= result / p;
        while (n % p == 0) n /= p;
    }
    if (n > 1) result -= result / n;
    return result;
}

// Smallest f >= 1 with p^f = 1 (mod m). Computed by stripping prime factors
// of phi(m) from the group order.
inline std::uint64_t multiplicative_order(std::uint64_t p, std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("multiplicative_order: modulus must be >= 1");
    if (m == 1) return 1;
    if (std::gcd(p % m, m) != 1)
        throw std::invalid_argument("multiplicative_order: base not coprime to modulus");
    std::uint64_t order = euler_phi(m);
    std::uint64_t n = order;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q) continue;
        while (n % q == 0) n /= q;
        while (order % q == 0 && powmod_u64(p, order / q, m) == 1) order /= q;
    }
    if (n > 1)
        while (order % n == 0 && powmod_u64(p, order / n, m) == 1) order /= n;
    return order;
}

// Number of ways to write j as an ordered sum of r non-negative integers,
// i.e. binomial(j + r - 1, r - 1). Exact; overflow past 63 bits is an error.
inline std::uint64_t compositions_count(std::uint64_t j, std::uint64_t r) {
    if (r < 1) throw std::invalid_argument("compositions_count: r must be >= 1");
    std::uint64_t n = j + r - 1, k = r - 1;
    if (k > n - k) k = n - k;
    __uint128_t acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i; // exact: product of i consecutive integers is divisible by i!
        if (acc > static_cast<__uint128_t>(INT64_MAX))
            throw std::overflow_error("compositions_count: result exceeds 2^63");
    }
    return static_cast<std::uint64_t>(acc);
}

// Full factorization of a 64-bit integer: trial division by small primes,
// then Brent's rho with Miller-Rabin on the cofactors.
namespace detail {
inline std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    std::uint64_t y = seed % n, c = (seed >> 17) % n + 1, m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
        for (std::uint64_t k = 0; k < r && g == 1; k += m) {
            ys = y;
            std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (mulmod_u64(y, y, n) + c) % n;
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = (mulmod_u64(ys, ys, n) + c) % n;
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

inline void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = n;
    for (std::uint64_t seed = 2; d == n; ++seed) d = pollard_brent(n, seed * 0x9e3779b97f4a7c15ULL + 1);
    factor_rec(d, out);
    factor_rec(n / d, out);
}
} // namespace detail

inline FactoredInteger factor_u64(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_u64: zero has no factorization");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    detail::factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<PrimePower> factors;
    for (std::uint64_t p : primes) {
        if (!factors.empty() && factors.back().prime == p)
            ++factors.back().exp;
        else
            factors.push_back({p, 1});
    }
    return FactoredInteger::from_factors(std::move(factors));
}

} // namespace zetak
