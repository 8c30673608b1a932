#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "zetak/resonator.hpp"

using namespace zetak;
using Catch::Approx;

TEST_CASE("parameter derivation") {
    auto params = build_params(3, 1000000, M_E, 1.2, 0.3);
    REQUIRE(params.k_levels == 1);
    REQUIRE(params.components.size() == 1);
    REQUIRE(params.components[0].j_budget == 8);
    REQUIRE(params.components[0].j_budget % 2 == 0);
    REQUIRE(params.components[0].p_count ==
            static_cast<long>(params.components[0].primes.size()));
    // I_1 in (u log N log2 N, u^2 log N log2 N]
    double l1 = std::log(1e6), l2 = std::log(l1);
    REQUIRE(params.components[0].interval_lo == Approx(M_E * l1 * l2));
    REQUIRE(params.components[0].interval_hi == Approx(M_E * M_E * l1 * l2));
    for (auto p : params.components[0].primes) {
        REQUIRE(p % 3 == 1);
        REQUIRE(static_cast<double>(p) > params.components[0].interval_lo);
        REQUIRE(static_cast<double>(p) <= params.components[0].interval_hi);
    }
}

TEST_CASE("admissibility and range guards") {
    REQUIRE_THROWS_AS(build_params(3, 1000000, M_E, 2.0, 0.6), std::invalid_argument);
    REQUIRE_THROWS_AS(build_params(2, 1000000), std::invalid_argument);
    REQUIRE_THROWS_AS(build_params(3, 16), std::invalid_argument);
    REQUIRE_THROWS_AS(build_params(3, 1000, 3.0, 1.2, 0.3), std::invalid_argument);
    REQUIRE_THROWS_AS(build_params(3, 1000, M_E, 0.9, 0.3), std::invalid_argument);
    REQUIRE_THROWS_AS(build_params(997, 100000), std::overflow_error);
}

TEST_CASE("default lambda maximizes the growth exponent") {
    double u = kDefaultU, b = kDefaultB;
    double h = h_parameter(u, b);
    double star = default_lambda(u, b);
    auto beta = [&](double lam) { return lam * std::log(h / (lam * lam)); };
    REQUIRE(beta(star) == Approx(2.0 * std::sqrt(h) / M_E));
    for (double lam = 0.05; lam < 2.0; lam += 0.05) REQUIRE(beta(lam) <= beta(star) + 1e-12);
}

TEST_CASE("component enumeration") {
    // no primes: only the empty product
    auto empty = build_component_elements({}, 6);
    REQUIRE(empty.size() == 1);
    REQUIRE(empty[0].is_one());

    // single prime p with J >= 2: {1, p, p^2} (q = p, neither, l = p)
    auto single = build_component_elements({13}, 2);
    REQUIRE(single.size() == 3);
    REQUIRE(single[0].is_one());
    REQUIRE(single[1] == FactoredInteger::from_prime(13));
    REQUIRE(single[2] == FactoredInteger::from_prime(13, 2));

    // J = 0 forces l = q = 1, leaving the full product N_k
    auto frozen = build_component_elements({13, 19}, 0);
    REQUIRE(frozen.size() == 1);
    REQUIRE(frozen[0] == FactoredInteger::parse("13:1 19:1"));

    // counting identity: sum over i,j <= J/2 of C(P,i) C(P-i,j)
    auto five = build_component_elements({7, 13, 19, 31, 37}, 6);
    REQUIRE(five.size() == 221);

    REQUIRE_THROWS_AS(build_component_elements({7, 13, 19, 31, 37}, 6, 100), std::runtime_error);
}

TEST_CASE("set construction invariants over the sweep") {
    std::size_t prev_size = 0;
    for (std::uint64_t n = 256; n <= 16384; n *= 2) {
        auto params = build_params(3, n);
        auto set = build_set(params);
        // cardinality bound and monotone growth in N
        REQUIRE(set.elements.size() <= n);
        REQUIRE(set.elements.size() >= prev_size);
        prev_size = set.elements.size();

        // element-form invariant, checked through decomposition
        REQUIRE(params.k_levels == 1);
        const auto& comp = params.components[0];
        for (const auto& m : set.elements) {
            auto [l, q] = decompose_element(m, comp);
            REQUIRE(gcd(l, q).is_one());
            REQUIRE(l.multiply(q).divides(comp.nk));
            REQUIRE(2 * l.omega() <= comp.j_budget);
            REQUIRE(2 * q.omega() <= comp.j_budget);
            // m = l * N_k / q reassembles
            REQUIRE(l.multiply(comp.nk).divide_exact(q) == m);
            for (const auto& f : m.factors()) REQUIRE(f.prime % 3 == 1);
        }
        // distinct elements
        for (std::size_t i = 1; i < set.elements.size(); ++i)
            REQUIRE_FALSE(set.elements[i - 1] == set.elements[i]);
    }
}

TEST_CASE("multi-level sets multiply out") {
    // gamma * phi large enough for two levels
    auto params = build_params(5, 4096, M_E, 1.01, 0.3);
    REQUIRE(params.k_levels == 2);
    auto set = build_set(params);
    std::size_t expect = 1;
    for (const auto& level : set.components) expect *= level.size();
    REQUIRE(set.elements.size() == expect); // level primes are disjoint, no collisions
}

TEST_CASE("construction guards") {
    auto params = build_params(3, 4096);
    // a hostile parameter struct: huge budgets on a fat component
    params.components[0].j_budget = 40;
    params.n = 20;
    REQUIRE_THROWS_AS(build_set(params), std::runtime_error);
}

TEST_CASE("deterministic rebuild and lossless round trip") {
    auto params = build_params(3, 4096);
    auto a = serialize_set(build_set(params));
    auto b = serialize_set(build_set(build_params(3, 4096)));
    REQUIRE(a == b);

    std::istringstream is(a);
    auto parsed = parse_set(is);
    REQUIRE(serialize_set(parsed) == a);

    // corruption is detected by the content hash
    std::string corrupt = a;
    corrupt[corrupt.size() / 2] ^= 1;
    std::istringstream bad(corrupt);
    REQUIRE_THROWS_AS(parse_set(bad), std::runtime_error);
}

TEST_CASE("prime density in progressions") {
    REQUIRE(siegel_walfisz_ratio(1e6, 3) == Approx(1.0).margin(0.05));
    REQUIRE(siegel_walfisz_ratio(1e6, 4) == Approx(1.0).margin(0.05));
    double informational = siegel_walfisz_ratio(1e3, 3);
    REQUIRE(informational > 0.0); // too small for equidistribution, report only
    REQUIRE_THROWS_AS(siegel_walfisz_ratio(100.0, 3), std::invalid_argument);
}
