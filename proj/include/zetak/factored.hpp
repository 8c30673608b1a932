#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetak {

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exp;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Positive integer held as its exponent vector. The integer value is never
// materialized (it routinely exceeds any machine word); magnitudes are
// compared through the cached natural log, ties broken lexicographically on
// the exponent vector so that ordering stays strict and reproducible.
class FactoredInteger {
public:
    FactoredInteger() = default; // the integer 1

    static FactoredInteger from_factors(std::vector<PrimePower> factors) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i].exp < 1)
                throw std::invalid_argument("FactoredInteger: exponent must be >= 1");
            if (i > 0 && factors[i - 1].prime >= factors[i].prime)
                throw std::invalid_argument("FactoredInteger: primes must be strictly increasing");
        }
        FactoredInteger n;
        n.factors_ = std::move(factors);
        n.recompute_log();
        return n;
    }

    static FactoredInteger from_prime(std::uint64_t p, std::uint32_t e = 1) {
        return from_factors({{p, e}});
    }

    const std::vector<PrimePower>& factors() const { return factors_; }
    double log_value() const { return log_value_; }
    bool is_one() const { return factors_.empty(); }

    int omega() const { return static_cast<int>(factors_.size()); }

    // Largest prime factor, 1 for the empty product.
    std::uint64_t p_plus() const { return factors_.empty() ? 1 : factors_.back().prime; }

    bool is_squarefree() const {
        return std::all_of(factors_.begin(), factors_.end(),
                           [](const PrimePower& f) { return f.exp == 1; });
    }

    std::uint32_t exponent_of(std::uint64_t p) const {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                                   [](const PrimePower& f, std::uint64_t q) { return f.prime < q; });
        return (it != factors_.end() && it->prime == p) ? it->exp : 0;
    }

    FactoredInteger multiply(const FactoredInteger& other) const {
        std::vector<PrimePower> out;
        out.reserve(factors_.size() + other.factors_.size());
        std::size_t i = 0, j = 0;
        while (i < factors_.size() || j < other.factors_.size()) {
            if (j == other.factors_.size() ||
                (i < factors_.size() && factors_[i].prime < other.factors_[j].prime)) {
                out.push_back(factors_[i++]);
            } else if (i == factors_.size() || other.factors_[j].prime < factors_[i].prime) {
                out.push_back(other.factors_[j++]);
            } else {
                out.push_back({factors_[i].prime, factors_[i].exp + other.factors_[j].exp});
                ++i;
                ++j;
            }
        }
        return from_factors(std::move(out));
    }

    // Throws unless other | this.
    FactoredInteger divide_exact(const FactoredInteger& other) const {
        std::vector<PrimePower> out;
        out.reserve(factors_.size());
        std::size_t i = 0;
        for (const auto& f : other.factors_) {
            while (i < factors_.size() && factors_[i].prime < f.prime) out.push_back(factors_[i++]);
            if (i == factors_.size() || factors_[i].prime != f.prime || factors_[i].exp < f.exp)
                throw std::invalid_argument("FactoredInteger::divide_exact: not divisible");
            if (factors_[i].exp > f.exp) out.push_back({f.prime, factors_[i].exp - f.exp});
            ++i;
        }
        while (i < factors_.size()) out.push_back(factors_[i++]);
        return from_factors(std::move(out));
    }

    bool divides(const FactoredInteger& other) const {
        for (const auto& f : factors_)
            if (other.exponent_of(f.prime) < f.exp) return false;
        return true;
    }

    // Exact value; throws if it does not fit in 63 bits.
    std::uint64_t value_u64() const {
        __uint128_t v = 1;
        for (const auto& f : factors_)
            for (std::uint32_t e = 0; e < f.exp; ++e) {
                v *= f.prime;
                if (v > static_cast<__uint128_t>(INT64_MAX))
                    throw std::overflow_error("FactoredInteger::value_u64: value exceeds 2^63");
            }
        return static_cast<std::uint64_t>(v);
    }

    // "p:e p:e ..." with the single token "1" for the empty product.
    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::ostringstream os;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) os << ' ';
            os << factors_[i].prime << ':' << factors_[i].exp;
        }
        return os.str();
    }

    static FactoredInteger parse(const std::string& text) {
        if (text == "1") return FactoredInteger();
        std::istringstream is(text);
        std::vector<PrimePower> factors;
        std::string tok;
        while (is >> tok) {
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("FactoredInteger::parse: bad token " + tok);
            factors.push_back({std::stoull(tok.substr(0, colon)),
                               static_cast<std::uint32_t>(std::stoul(tok.substr(colon + 1)))});
        }
        return from_factors(std::move(factors));
    }

    friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
        return a.factors_ == b.factors_;
    }

    // log-first ordering, exact exponent-vector tie break.
    friend bool operator<(const FactoredInteger& a, const FactoredInteger& b) {
        if (a.log_value_ != b.log_value_) return a.log_value_ < b.log_value_;
        return std::lexicographical_compare(
            a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
            [](const PrimePower& x, const PrimePower& y) {
                return x.prime != y.prime ? x.prime < y.prime : x.exp < y.exp;
            });
    }

private:
    void recompute_log() {
        log_value_ = 0.0;
        for (const auto& f : factors_) log_value_ += f.exp * std::log(static_cast<double>(f.prime));
    }

    std::vector<PrimePower> factors_;
    double log_value_ = 0.0;
};

inline FactoredInteger gcd(const FactoredInteger& a, const FactoredInteger& b) {
    std::vector<PrimePower> out;
    for (const auto& f : a.factors()) {
        std::uint32_t e = std::min(f.exp, b.exponent_of(f.prime));
        if (e > 0) out.push_back({f.prime, e});
    }
    return FactoredInteger::from_factors(std::move(out));
}

inline FactoredInteger lcm(const FactoredInteger& a, const FactoredInteger& b) {
    std::vector<PrimePower> out;
    std::size_t i = 0, j = 0;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].prime < fb[j].prime))
            out.push_back(fa[i++]);
        else if (i == fa.size() || fb[j].prime < fa[i].prime)
            out.push_back(fb[j++]);
        else {
            out.push_back({fa[i].prime, std::max(fa[i].exp, fb[j].exp)});
            ++i;
            ++j;
        }
    }
    return FactoredInteger::from_factors(std::move(out));
}

inline std::pair<FactoredInteger, FactoredInteger> gcd_lcm(const FactoredInteger& a,
                                                           const FactoredInteger& b) {
    return {gcd(a, b), lcm(a, b)};
}

// ln(gcd(a,b)/lcm(a,b)) <= 0, computed from exact exponent differences with a
// single float conversion per prime.
inline double ratio_log(const FactoredInteger& a, const FactoredInteger& b) {
    double r = 0.0;
    std::size_t i = 0, j = 0;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    while (i < fa.size() || j < fb.size()) {
        std::uint64_t p;
        std::uint32_t ea = 0, eb = 0;
        if (j == fb.size() || (i < fa.size() && fa[i].prime < fb[j].prime)) {
            p = fa[i].prime;
            ea = fa[i++].exp;
        } else if (i == fa.size() || fb[j].prime < fa[i].prime) {
            p = fb[j].prime;
            eb = fb[j++].exp;
        } else {
            p = fa[i].prime;
            ea = fa[i++].exp;
            eb = fb[j++].exp;
        }
        std::int64_t diff = static_cast<std::int64_t>(std::min(ea, eb)) -
                            static_cast<std::int64_t>(std::max(ea, eb));
        if (diff != 0) r += static_cast<double>(diff) * std::log(static_cast<double>(p));
    }
    return r;
}

inline int omega(const FactoredInteger& n) { return n.omega(); }
inline std::uint64_t p_plus(const FactoredInteger& n) { return n.p_plus(); }

} // namespace zetak
