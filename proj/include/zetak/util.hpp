#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace zetak {

// Neumaier variant of Kahan summation. Order of add() calls fixes the result
// bit for bit, so any parallel scheme must feed a reducer in a fixed order.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Counter-based generator: value i of a stream keyed by `seed` is
// splitmix64(seed, i). No state shared between call sites.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(splitmix64(seed, counter) >> 11) * 0x1.0p-53;
}

// k-fold iterated natural logarithm.
inline double iterated_log(double x, int k) {
    double v = x;
    for (int i = 0; i < k; ++i) {
        if (v <= 1.0)
            throw std::domain_error("iterated_log: argument left the domain at depth " +
                                    std::to_string(i + 1));
        v = std::log(v);
    }
    return v;
}

// exp(sqrt(log x * log3 x / log2 x)), defined for x > 16.
inline double growth_scale(double x) {
    if (x <= 16.0) throw std::domain_error("growth_scale: requires x > 16");
    double l1 = std::log(x), l2 = std::log(l1), l3 = std::log(l2);
    return std::exp(std::sqrt(l1 * l3 / l2));
}

// Deterministic blocked reduction: items are cut into fixed-size blocks,
// each block is summed with compensation, and the per-block results are
// combined in block order. The partition does not depend on the thread
// count, so every thread count yields the same bits as the serial run.
inline double blocked_pair_reduce(std::size_t n_blocks,
                                  const std::function<double(std::size_t)>& block_sum,
                                  int threads) {
    std::vector<double> partial(n_blocks, 0.0);
    if (threads <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) partial[b] = block_sum(b);
    } else {
        unsigned hw = std::thread::hardware_concurrency();
        std::size_t n_threads = std::min<std::size_t>(
            n_blocks, threads > 0 ? static_cast<std::size_t>(threads)
                                  : (hw ? hw : 1u));
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t b = t; b < n_blocks; b += n_threads)
                    partial[b] = block_sum(b);
            });
        }
        for (auto& th : pool) th.join();
    }
    CompensatedSum total;
    for (std::size_t b = 0; b < n_blocks; ++b) total.add(partial[b]);
    return total.value();
}

// 64-bit FNV-1a, used as the content hash for cache artifacts.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace zetak
