#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetak {

// Hard ceiling for sieve-based prime generation; calls asking for more are
// rejected rather than silently degraded.
inline constexpr std::uint64_t kDefaultSieveCapacity = 100'000'000ULL;

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((__uint128_t)a * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = m > 1 ? 1 % m : 0;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Primes in [2, limit], plain odd-only sieve. Used for base primes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<std::uint8_t> comp((limit >> 1) + 1, 0); // comp[i] marks 2i+1
    out.push_back(2);
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
        if (comp[i]) continue;
        std::uint64_t p = 2 * i + 1;
        out.push_back(p);
        if (p * p <= limit)
            for (std::uint64_t j = (p * p) >> 1; 2 * j + 1 <= limit; j += p) comp[j] = 1;
    }
    return out;
}

// Primes p with lo < p <= hi, segmented. Bounds are real-valued; the strict
// lower / inclusive upper convention is applied to the exact integer p.
inline std::vector<std::uint64_t> sieve_primes(double lo, double hi,
                                               std::uint64_t capacity = kDefaultSieveCapacity) {
    if (!(lo >= 0.0) || !(hi > lo))
        throw std::invalid_argument("sieve_primes: need 0 <= lo < hi");
    if (hi > static_cast<double>(capacity))
        throw std::overflow_error("sieve_primes: hi exceeds sieve capacity " +
                                  std::to_string(capacity));
    std::uint64_t hi_int = static_cast<std::uint64_t>(std::floor(hi));
    std::uint64_t lo_int = static_cast<std::uint64_t>(std::floor(lo));
    std::vector<std::uint64_t> out;
    if (hi_int < 2) return out;

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi_int))) + 1;
    auto base = primes_up_to(root);

    const std::uint64_t seg = 1 << 20;
    std::vector<std::uint8_t> mark(seg);
    std::uint64_t start = std::max<std::uint64_t>(2, lo_int);
    for (std::uint64_t low = start; low <= hi_int; low += seg) {
        std::uint64_t high = std::min(hi_int, low + seg - 1);
        std::fill(mark.begin(), mark.begin() + (high - low + 1), 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t first = std::max(p * p, ((low + p - 1) / p) * p);
            for (std::uint64_t m = first; m <= high; m += p) mark[m - low] = 0;
        }
        for (std::uint64_t n = low; n <= high; ++n) {
            if (n < 2 || !mark[n - low]) continue;
            double nd = static_cast<double>(n);
            if (nd > lo && nd <= hi) out.push_back(n);
        }
    }
    return out;
}

// Primes p with lo < p <= hi and p = residue (mod modulus).
inline std::vector<std::uint64_t> sieve_primes_in_ap(double lo, double hi,
                                                     std::uint64_t modulus, std::uint64_t residue,
                                                     std::uint64_t capacity = kDefaultSieveCapacity) {
    if (modulus < 1) throw std::invalid_argument("sieve_primes_in_ap: modulus must be >= 1");
    if (modulus > 1 && std::gcd(residue % modulus, modulus) != 1)
        throw std::invalid_argument("sieve_primes_in_ap: residue not coprime to modulus");
    auto all = sieve_primes(lo, hi, capacity);
    if (modulus == 1) return all;
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : all)
        if (p % modulus == residue % modulus) out.push_back(p);
    return out;
}

inline std::uint64_t prime_count(double hi, std::uint64_t capacity = kDefaultSieveCapacity) {
    return sieve_primes(0.0, hi, capacity).size();
}

inline std::uint64_t prime_count_in_ap(double hi, std::uint64_t modulus, std::uint64_t residue,
                                       std::uint64_t capacity = kDefaultSieveCapacity) {
    return sieve_primes_in_ap(0.0, hi, modulus, residue, capacity).size();
}

// --- prime table cache --------------------------------------------------
//
// Layout: 8-byte magic "ZKPRIME1", 8-byte little-endian capacity, then the
// primes as little-endian u64. Count is implied by the file size.

inline constexpr char kPrimeCacheMagic[8] = {'Z', 'K', 'P', 'R', 'I', 'M', 'E', '1'};

inline void save_prime_cache(const std::string& path, const std::vector<std::uint64_t>& primes,
                             std::uint64_t capacity) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("save_prime_cache: cannot open " + path);
    f.write(kPrimeCacheMagic, 8);
    char buf[8];
    auto put_u64 = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        f.write(buf, 8);
    };
    put_u64(capacity);
    for (std::uint64_t p : primes) put_u64(p);
    if (!f) throw std::runtime_error("save_prime_cache: write failed for " + path);
}

struct PrimeCache {
    std::uint64_t capacity = 0;
    std::vector<std::uint64_t> primes;
};

inline std::optional<PrimeCache> load_prime_cache(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    char magic[8];
    if (!f.read(magic, 8) || std::memcmp(magic, kPrimeCacheMagic, 8) != 0) return std::nullopt;
    char buf[8];
    auto get_u64 = [&](std::uint64_t& v) {
        if (!f.read(buf, 8)) return false;
        v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
        return true;
    };
    PrimeCache cache;
    if (!get_u64(cache.capacity)) return std::nullopt;
    std::uint64_t p;
    while (get_u64(p)) cache.primes.push_back(p);
    return cache;
}

} // namespace zetak
