#pragma once

// The unit group (Z/nZ)^x as concrete residues, plus its abstract shape.

#include "ebc/arith.hpp"

#include <cstdint>
#include <vector>

namespace ebc {

// Invariant factors d_1 | d_2 | ... | d_s, each >= 2; empty for the trivial group.
struct GroupShape {
    std::vector<std::uint64_t> invariant_factors;

    std::uint64_t order() const;
    std::uint64_t exponent() const;  // d_s, or 1 when trivial
    std::size_t rank() const { return invariant_factors.size(); }
    bool is_cyclic() const { return invariant_factors.size() <= 1; }

    // Normalizes any list of cyclic orders into invariant-factor form.
    static GroupShape from_cyclic_orders(std::vector<std::uint64_t> orders);

    friend bool operator==(const GroupShape&, const GroupShape&) = default;
};

std::vector<Residue> units(std::uint64_t n);

std::uint64_t euler_phi(const Factorization& f);
std::uint64_t carmichael_lambda(const Factorization& f);

GroupShape unit_group_shape(const Factorization& f);

// Least t >= 1 with a^t = 1 mod n; DomainError if gcd(a, n) != 1.
std::uint64_t element_order(Residue a, std::uint64_t n);

struct CyclicGenerator {
    Residue generator;
    std::uint64_t order;
};

// Residues g_1..g_s with ord(g_i) = d_i whose cyclic subgroups form an
// internal direct sum equal to the unit group (one per invariant factor).
std::vector<CyclicGenerator> unit_group_basis(const Factorization& f);

// Element-order histogram of the abstract group C_{d_1} x ... x C_{d_s}:
// entry t counts elements of order t (index 0 unused).
std::vector<std::uint64_t> abstract_order_histogram(const GroupShape& shape);

}  // namespace ebc
