#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetak/arith.hpp"

namespace zetak {

inline constexpr std::uint64_t kMaxCharacterModulus = 1'000'000;

namespace detail {

struct CyclicFactor {
    std::uint64_t generator; // residue mod d generating this factor
    std::uint64_t order;
};

inline std::uint64_t primitive_root_mod_pk(std::uint64_t p, std::uint32_t k) {
    // primitive root mod p first
    std::uint64_t phi_p = p - 1;
    std::vector<std::uint64_t> qs;
    std::uint64_t n = phi_p;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            qs.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) qs.push_back(n);
    std::uint64_t g = 0;
    for (std::uint64_t cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (std::uint64_t q : qs)
            if (powmod_u64(cand, phi_p / q, p) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (k == 1) return g;
    // g generates mod p^k iff g^(p-1) != 1 mod p^2
    std::uint64_t p2 = p * p;
    if (powmod_u64(g, p - 1, p2) == 1) g += p;
    return g;
}

// CRT decomposition of the unit group mod d into cyclic factors with fixed
// generators. Factors ordered by the prime they sit over (the 2-power part
// contributes <-1> then <5>), which fixes the character labels.
class UnitGroup {
public:
    explicit UnitGroup(std::uint64_t d) : modulus_(d) {
        if (d < 1 || d > kMaxCharacterModulus)
            throw std::invalid_argument("UnitGroup: modulus out of supported range");
        auto df = factor_u64(d == 1 ? 1 : d);
        for (const auto& f : df.factors()) {
            std::uint64_t pk = 1;
            for (std::uint32_t i = 0; i < f.exp; ++i) pk *= f.prime;
            std::uint64_t rest = d / pk;
            auto lift = [&](std::uint64_t r) { return crt_lift(r, pk, rest); };
            if (f.prime == 2) {
                if (f.exp == 1) continue; // trivial
                if (f.exp == 2) {
                    factors_.push_back({lift(3), 2});
                } else {
                    factors_.push_back({lift(pk - 1), 2});
                    factors_.push_back({lift(5), pk / 4});
                }
            } else {
                factors_.push_back({lift(primitive_root_mod_pk(f.prime, f.exp)), euler_phi(pk)});
            }
        }
        exponent_ = 1;
        order_ = 1;
        for (const auto& f : factors_) {
            exponent_ = std::lcm(exponent_, f.order);
            order_ *= f.order;
        }
        build_dlog();
    }

    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t order() const { return order_; }          // phi(d)
    std::uint64_t exponent() const { return exponent_; }    // lcm of factor orders
    const std::vector<CyclicFactor>& factors() const { return factors_; }

    // discrete log tuple of a unit, one exponent per factor
    const std::vector<std::uint32_t>& dlog(std::uint64_t unit) const {
        return dlog_[unit % modulus_];
    }
    bool is_unit(std::uint64_t n) const { return std::gcd(n % modulus_, modulus_) == 1; }

private:
    std::uint64_t crt_lift(std::uint64_t r, std::uint64_t pk, std::uint64_t rest) const {
        if (rest == 1) return r % modulus_;
        // x = r mod pk, x = 1 mod rest
        for (std::uint64_t x = r % modulus_;; x += pk)
            if (x % rest == 1) return x % modulus_;
    }

    void build_dlog() {
        dlog_.assign(modulus_, {});
        std::vector<std::uint32_t> tuple(factors_.size(), 0);
        std::uint64_t residue = 1 % modulus_;
        // enumerate the group as a mixed-radix counter over the factors
        std::uint64_t total = order_;
        for (std::uint64_t step = 0; step < total; ++step) {
            dlog_[residue] = tuple;
            // increment
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                residue = mulmod_u64(residue, factors_[i].generator, modulus_);
                if (++tuple[i] < factors_[i].order) break;
                // wrapping factor i: residue already multiplied order times -> back to start of that digit
                tuple[i] = 0;
            }
        }
    }

    std::uint64_t modulus_;
    std::uint64_t order_ = 1;
    std::uint64_t exponent_ = 1;
    std::vector<CyclicFactor> factors_;
    std::vector<std::vector<std::uint32_t>> dlog_;
};

} // namespace detail

// Character mod d with values stored as exact fractions of a full turn:
// chi(n) = e(angle_num(n) / angle_den), so orthogonality-style identities can
// be checked without accumulated drift.
class DirichletCharacter {
public:
    DirichletCharacter() = default;

    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t label() const { return label_; }
    std::uint64_t conductor() const { return conductor_; }
    bool is_principal() const { return principal_; }
    std::uint64_t angle_den() const { return angle_den_; }

    bool is_unit(std::uint64_t n) const { return std::gcd(n % modulus_, modulus_) == 1; }

    // angle numerator in [0, angle_den) for units; throws otherwise
    std::uint64_t angle_num(std::uint64_t n) const {
        std::uint64_t r = n % modulus_;
        if (!is_unit(r)) throw std::invalid_argument("DirichletCharacter: not a unit");
        return angle_num_[r];
    }

    std::complex<double> operator()(std::uint64_t n) const {
        std::uint64_t r = n % modulus_;
        if (!is_unit(r)) return {0.0, 0.0};
        double theta = 2.0 * M_PI * static_cast<double>(angle_num_[r]) / static_cast<double>(angle_den_);
        return {std::cos(theta), std::sin(theta)};
    }

    // real character: all values in {0, +-1}
    bool is_real() const {
        for (std::uint64_t r = 0; r < modulus_; ++r)
            if (is_unit(r) && angle_num_[r] != 0 && 2 * angle_num_[r] != angle_den_) return false;
        return true;
    }

    std::string to_record() const {
        std::ostringstream os;
        os << "chi " << modulus_ << ' ' << label_ << ' ' << conductor_ << ' ' << angle_den_ << ';';
        for (std::uint64_t r = 0; r < modulus_; ++r)
            if (is_unit(r)) os << ' ' << r << ':' << angle_num_[r];
        return os.str();
    }

    static DirichletCharacter from_record(const std::string& record);

    friend std::vector<DirichletCharacter> character_group(std::uint64_t d);
    friend std::pair<std::uint64_t, DirichletCharacter> conductor_and_primitive(const DirichletCharacter&);

private:
    std::uint64_t modulus_ = 1;
    std::uint64_t label_ = 0;
    std::uint64_t conductor_ = 1;
    bool principal_ = true;
    std::uint64_t angle_den_ = 1;
    std::vector<std::uint64_t> angle_num_; // per residue; meaningful on units only

    void compute_conductor() {
        // smallest f | d such that chi is trivial on units = 1 (mod f)
        for (std::uint64_t f = 1; f <= modulus_; ++f) {
            if (modulus_ % f) continue;
            bool induced = true;
            for (std::uint64_t x = 1; x < modulus_ && induced; x += f)
                if (is_unit(x) && angle_num_[x % modulus_] != 0) induced = false;
            if (induced) {
                conductor_ = f;
                return;
            }
        }
        conductor_ = modulus_;
    }
};

// All phi(d) characters mod d in canonical label order; the principal
// character comes first.
inline std::vector<DirichletCharacter> character_group(std::uint64_t d) {
    if (d < 1) throw std::invalid_argument("character_group: modulus must be >= 1");
    detail::UnitGroup group(d);
    std::uint64_t count = group.order();
    std::vector<DirichletCharacter> out;
    out.reserve(count);

    const auto& factors = group.factors();
    for (std::uint64_t label = 0; label < count; ++label) {
        DirichletCharacter chi;
        chi.modulus_ = d;
        chi.label_ = label;
        chi.angle_den_ = group.exponent();
        chi.angle_num_.assign(d, 0);
        // label -> exponent tuple, little-endian mixed radix
        std::vector<std::uint64_t> e(factors.size());
        std::uint64_t rest = label;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            e[i] = rest % factors[i].order;
            rest /= factors[i].order;
        }
        bool principal = true;
        for (std::uint64_t r = 0; r < d; ++r) {
            if (!group.is_unit(r)) continue;
            const auto& t = group.dlog(r);
            std::uint64_t num = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                // e_i * t_i / order_i as a fraction of a turn, common denominator group exponent
                num = (num + e[i] * t[i] % factors[i].order * (group.exponent() / factors[i].order)) %
                      group.exponent();
            }
            chi.angle_num_[r] = num;
            if (num != 0) principal = false;
        }
        chi.principal_ = principal;
        chi.compute_conductor();
        out.push_back(std::move(chi));
    }
    return out;
}

// Smallest modulus inducing chi, together with the inducing primitive
// character evaluated on its own modulus.
inline std::pair<std::uint64_t, DirichletCharacter> conductor_and_primitive(
    const DirichletCharacter& chi) {
    std::uint64_t f = chi.conductor();
    if (f == chi.modulus()) return {f, chi};
    auto group_f = character_group(f);
    for (const auto& cand : group_f) {
        bool match = true;
        for (std::uint64_t y = 0; y < f && match; ++y) {
            if (!cand.is_unit(y)) continue;
            // lift y to a residue mod d coprime to d
            std::uint64_t x = y;
            while (!chi.is_unit(x)) x += f;
            std::uint64_t num_d = chi.angle_num(x);
            std::uint64_t num_f = cand.angle_num(y);
            // compare num_d/den_d with num_f/den_f exactly
            if (num_d * cand.angle_den() != num_f * chi.angle_den()) match = false;
        }
        if (match) return {f, cand};
    }
    throw std::logic_error("conductor_and_primitive: no inducing character found");
}

inline DirichletCharacter DirichletCharacter::from_record(const std::string& record) {
    std::istringstream is(record);
    std::string tag;
    is >> tag;
    if (tag != "chi") throw std::invalid_argument("DirichletCharacter::from_record: bad tag");
    std::uint64_t modulus, label;
    is >> modulus >> label;
    auto group = character_group(modulus);
    if (label >= group.size())
        throw std::invalid_argument("DirichletCharacter::from_record: label out of range");
    // remaining fields are redundant; re-derive and verify the conductor
    std::uint64_t conductor, den;
    char semi;
    is >> conductor >> den >> semi;
    auto chi = group[label];
    if (chi.conductor() != conductor || chi.angle_den() != den)
        throw std::invalid_argument("DirichletCharacter::from_record: inconsistent record");
    return chi;
}

} // namespace zetak
