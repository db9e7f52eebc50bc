#include "ebc/errors.hpp"
#include "ebc/unitgroup.hpp"
#include "oracles.hpp"
#include "symmetry.hpp"

#include <doctest.h>

#include <set>

using namespace ebc;

TEST_CASE("units") {
    CHECK(units(12) == std::vector<Residue>{1, 5, 7, 11});
    CHECK(units(2) == std::vector<Residue>{1});
    CHECK(units(5) == std::vector<Residue>{1, 2, 3, 4});
    for (std::uint64_t n = 2; n < 500; ++n) {
        CHECK(units(n) == oracle::units(n));
        CHECK(euler_phi(factorize(n)) == oracle::units(n).size());
    }
}

TEST_CASE("unit group shape") {
    using V = std::vector<std::uint64_t>;
    CHECK(unit_group_shape(factorize(12)).invariant_factors == V{2, 2});
    CHECK(unit_group_shape(factorize(8)).invariant_factors == V{2, 2});
    CHECK(unit_group_shape(factorize(5)).invariant_factors == V{4});
    CHECK(unit_group_shape(factorize(2)).invariant_factors.empty());
    CHECK(unit_group_shape(factorize(4)).invariant_factors == V{2});
    CHECK(unit_group_shape(factorize(15)).invariant_factors == V{2, 4});
    CHECK(unit_group_shape(factorize(16)).invariant_factors == V{2, 4});
    CHECK(unit_group_shape(factorize(24)).invariant_factors == V{2, 2, 2});
    CHECK(unit_group_shape(factorize(91)).invariant_factors == V{6, 12});
    CHECK(GroupShape::from_cyclic_orders({4, 6, 1}).invariant_factors == V{2, 12});
    CHECK(GroupShape{}.order() == 1);
    CHECK(GroupShape{}.exponent() == 1);
    CHECK(GroupShape{V{2, 12}}.exponent() == 12);
}

TEST_CASE("shape matches the element-order histogram") {
    for (std::uint64_t n = 2; n < 300; ++n) {
        const auto f = factorize(n);
        const auto shape = unit_group_shape(f);
        CHECK(shape.order() == euler_phi(f));
        CHECK(shape.exponent() == carmichael_lambda(f));
        for (std::size_t i = 1; i < shape.rank(); ++i)
            CHECK(shape.invariant_factors[i] % shape.invariant_factors[i - 1] == 0);
        std::vector<std::uint64_t> hist(shape.exponent() + 1, 0);
        for (auto u : oracle::units(n)) ++hist[oracle::element_order(u, n)];
        CHECK(hist == abstract_order_histogram(shape));
    }
}

TEST_CASE("element_order") {
    CHECK(element_order(2, 5) == 4);
    CHECK(element_order(1, 9) == 1);
    CHECK(element_order(11, 12) == 2);
    CHECK_THROWS_AS(element_order(2, 4), DomainError);
    for (std::uint64_t n = 2; n < 200; ++n)
        for (auto u : oracle::units(n)) CHECK(element_order(u, n) == oracle::element_order(u, n));
}

TEST_CASE("basis generates the unit group as a direct sum") {
    for (std::uint64_t n = 2; n < 400; ++n) {
        const auto f = factorize(n);
        const auto basis = unit_group_basis(f);
        const auto shape = unit_group_shape(f);
        REQUIRE(basis.size() == shape.rank());
        std::set<std::uint64_t> span{1 % n};
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(basis[i].order == shape.invariant_factors[i]);
            CHECK(oracle::element_order(basis[i].generator, n) == basis[i].order);
            std::set<std::uint64_t> next;
            for (auto x : span) {
                std::uint64_t y = x;
                for (std::uint64_t k = 0; k < basis[i].order; ++k) {
                    next.insert(y);
                    y = y * basis[i].generator % n;
                }
            }
            span = next;
        }
        CHECK(span.size() == euler_phi(f));
    }
}

TEST_CASE("automorphisms preserve multiplication") {
    for (std::uint64_t n : {5, 8, 12, 15, 16, 21, 24, 35, 63, 65}) {
        const auto f = factorize(n);
        const auto u = oracle::units(n);
        for (const auto& perm : detail::unit_group_automorphisms(f, 64)) {
            REQUIRE(perm.size() == n);
            std::set<std::uint32_t> image(perm.begin(), perm.end());
            CHECK(image.size() == n);
            for (auto a : u)
                for (auto b : u) CHECK(perm[a * b % n] == std::uint64_t{perm[a]} * perm[b] % n);
        }
        for (const auto& perm : detail::semigroup_power_automorphisms(f)) {
            std::set<std::uint32_t> image(perm.begin(), perm.end());
            CHECK(image.size() == n);
            for (std::uint64_t a = 0; a < n; ++a)
                for (std::uint64_t b = 0; b < n; ++b) CHECK(perm[a * b % n] == std::uint64_t{perm[a]} * perm[b] % n);
        }
    }
    // |Aut(C2 x C2)| = 6, five without the identity.
    CHECK(detail::unit_group_automorphisms(factorize(12), 100).size() == 5);
    CHECK(detail::unit_group_automorphisms(factorize(13), 100).size() == 3);
}
