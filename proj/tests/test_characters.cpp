#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <map>
#include <set>

#include "zetak/characters.hpp"

using namespace zetak;
using Catch::Approx;

TEST_CASE("group sizes and principal-first ordering") {
    REQUIRE(character_group(4).size() == 2);
    REQUIRE(character_group(5).size() == 4);
    REQUIRE(character_group(1).size() == 1);
    for (std::uint64_t d : {3ULL, 4ULL, 5ULL, 8ULL, 12ULL, 36ULL}) {
        auto chars = character_group(d);
        REQUIRE(chars.size() == euler_phi(d));
        REQUIRE(chars.front().is_principal());
        for (std::size_t i = 0; i < chars.size(); ++i) REQUIRE(chars[i].label() == i);
        for (std::size_t i = 1; i < chars.size(); ++i) REQUIRE_FALSE(chars[i].is_principal());
    }
}

TEST_CASE("character values are multiplicative roots of unity") {
    for (std::uint64_t d : {5ULL, 8ULL, 9ULL, 12ULL, 15ULL, 24ULL}) {
        for (const auto& chi : character_group(d)) {
            REQUIRE(chi(1) == std::complex<double>(1.0, 0.0));
            for (std::uint64_t a = 1; a < d; ++a) {
                if (!chi.is_unit(a)) {
                    REQUIRE(std::abs(chi(a)) == 0.0);
                    continue;
                }
                REQUIRE(std::abs(chi(a)) == Approx(1.0).margin(1e-12));
                for (std::uint64_t b = 1; b < d; ++b) {
                    if (!chi.is_unit(b)) continue;
                    auto lhs = chi(a * b);
                    auto rhs = chi(a) * chi(b);
                    REQUIRE(std::abs(lhs - rhs) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("orthogonality relations") {
    for (std::uint64_t d : {3ULL, 4ULL, 5ULL, 8ULL, 12ULL, 21ULL}) {
        auto chars = character_group(d);
        for (const auto& chi : chars) {
            std::complex<double> sum = 0;
            for (std::uint64_t n = 1; n <= d; ++n) sum += chi(n);
            if (chi.is_principal())
                REQUIRE(std::abs(sum - std::complex<double>(double(euler_phi(d)))) < 1e-10);
            else
                REQUIRE(std::abs(sum) < 1e-10);
        }
        // column orthogonality: sum over chi of chi(n)
        for (std::uint64_t n = 1; n <= d; ++n) {
            std::complex<double> sum = 0;
            for (const auto& chi : chars) sum += chi(n);
            double expect = (n % d == 1 % d) ? double(euler_phi(d)) : 0.0;
            REQUIRE(std::abs(sum - expect) < 1e-10);
        }
    }
}

TEST_CASE("conductors of the mod 8 group") {
    auto chars = character_group(8);
    std::multiset<std::uint64_t> conductors;
    for (const auto& chi : chars) conductors.insert(chi.conductor());
    REQUIRE(conductors == std::multiset<std::uint64_t>{1, 4, 8, 8});
}

TEST_CASE("conductor divides modulus; conductor 1 iff principal") {
    for (std::uint64_t d : {3ULL, 6ULL, 8ULL, 12ULL, 30ULL, 40ULL}) {
        for (const auto& chi : character_group(d)) {
            REQUIRE(d % chi.conductor() == 0);
            REQUIRE((chi.conductor() == 1) == chi.is_principal());
        }
    }
}

TEST_CASE("primitive character induces the original") {
    // principal mod d -> the constant character mod 1
    auto chars6 = character_group(6);
    auto [f0, star0] = conductor_and_primitive(chars6[0]);
    REQUIRE(f0 == 1);
    REQUIRE(star0.modulus() == 1);
    REQUIRE(star0(5) == std::complex<double>(1.0, 0.0));

    // the non-principal character mod 6 comes from mod 3
    auto [f1, star1] = conductor_and_primitive(chars6[1]);
    REQUIRE(f1 == 3);
    REQUIRE(star1.modulus() == 3);
    REQUIRE(std::abs(star1(2) - std::complex<double>(-1.0, 0.0)) < 1e-14);

    // a primitive character is its own inducer
    for (const auto& chi : character_group(5)) {
        if (chi.is_principal()) continue;
        REQUIRE(chi.conductor() == 5);
        auto [f, star] = conductor_and_primitive(chi);
        REQUIRE(f == 5);
        REQUIRE(star.label() == chi.label());
    }
}

TEST_CASE("induction consistency chi*(n) = chi(n) on units") {
    for (std::uint64_t d = 3; d <= 50; ++d) {
        for (const auto& chi : character_group(d)) {
            auto [f, star] = conductor_and_primitive(chi);
            for (std::uint64_t n = 1; n <= 1000; ++n) {
                if (std::gcd(n, d) != 1) continue;
                if (std::abs(chi(n) - star(n)) > 1e-12) {
                    CAPTURE(d, chi.label(), n);
                    REQUIRE(std::abs(chi(n) - star(n)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("conductor counts reproduce phi(d)") {
    // characters mod d with conductor f match the primitive characters mod f
    for (std::uint64_t d : {12ULL, 24ULL, 36ULL, 45ULL}) {
        std::map<std::uint64_t, std::size_t> by_conductor;
        for (const auto& chi : character_group(d)) ++by_conductor[chi.conductor()];
        std::size_t total = 0;
        for (auto [f, count] : by_conductor) {
            std::size_t primitive_mod_f = 0;
            for (const auto& psi : character_group(f))
                if (psi.conductor() == f) ++primitive_mod_f;
            REQUIRE(count == primitive_mod_f);
            total += count;
        }
        REQUIRE(total == euler_phi(d));
    }
}

TEST_CASE("specific values") {
    auto chars4 = character_group(4);
    REQUIRE(std::abs(chars4[1](3) - std::complex<double>(-1.0, 0.0)) < 1e-14);
    for (const auto& chi : character_group(5)) REQUIRE(std::abs(chi(10)) == 0.0);
}

TEST_CASE("record round trip") {
    for (std::uint64_t d : {5ULL, 8ULL, 12ULL}) {
        for (const auto& chi : character_group(d)) {
            auto copy = DirichletCharacter::from_record(chi.to_record());
            REQUIRE(copy.modulus() == chi.modulus());
            REQUIRE(copy.label() == chi.label());
            REQUIRE(copy.conductor() == chi.conductor());
            REQUIRE(copy.to_record() == chi.to_record());
        }
    }
}
