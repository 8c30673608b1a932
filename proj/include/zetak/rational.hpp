#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zetak {

namespace detail {
inline std::int64_t checked_mul_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("Rational: 64-bit overflow");
    return r;
}
} // namespace detail

// Exact rational on int64 with overflow as a hard error. Comparisons cross-
// multiply in 128 bits, so they are exact for any representable operands.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator*(const Rational& o) const {
        // cross-reduce first to keep intermediates small
        std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
        std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
        Rational r;
        r.num_ = detail::checked_mul_i64(num_ / g1, o.num_ / g2);
        r.den_ = detail::checked_mul_i64(den_ / g2, o.den_ / g1);
        return r;
    }

    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        Rational inv;
        inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
        inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
        return *this * inv;
    }

    Rational pow(std::uint32_t e) const {
        Rational r(1);
        for (std::uint32_t i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <= static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace zetak
