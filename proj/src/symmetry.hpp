#pragma once

// Automorphisms used to merge equivalent search states. Any subset of the
// automorphism group is sound for that purpose; larger subsets merge more.

#include "ebc/arith.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ebc::detail {

using Permutation = std::vector<std::uint32_t>;

// Automorphisms of the unit group written as permutations of [0, n) (identity
// on non-units), found from images of an invariant-factor basis. The identity
// is not included; at most max_count are returned.
std::vector<Permutation> unit_group_automorphisms(const Factorization& f, std::size_t max_count);

// x -> x^u on all of Z_n, kept only where the map is a bijection (it is then a
// semigroup automorphism and so permutes the idempotents).
std::vector<Permutation> semigroup_power_automorphisms(const Factorization& f);

}  // namespace ebc::detail
