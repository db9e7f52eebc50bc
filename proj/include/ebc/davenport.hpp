#pragma once

// Exact Davenport constant D((Z/nZ)^x) by exhaustive search, with an extremal
// product-one free witness.

#include "ebc/arith.hpp"
#include "ebc/budget.hpp"
#include "ebc/sequences.hpp"
#include "ebc/unitgroup.hpp"

#include <cstdint>
#include <string_view>

namespace ebc {

// Largest n accepted by davenport_exact and eb_exact (DomainError above).
// Certifying a witness takes up to n^2 modular products.
inline constexpr std::uint64_t kMaxConstantModulus = std::uint64_t{1} << 14;

enum class SearchStatus { exact, undecided };

enum class DavenportMethod {
    // The search had to rule out longer sequences state by state.
    exhaustive,
    // The construction already met the strict-growth ceiling phi(n) - 1.
    formula_cross_checked,
};

std::string_view to_string(SearchStatus s);
std::string_view to_string(DavenportMethod m);

struct DavenportResult {
    std::uint64_t n = 0;
    SearchStatus status = SearchStatus::undecided;
    // D when exact; otherwise value == lower.
    std::uint64_t value = 0;
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    // Longest product-one free unit sequence known; |witness| = lower - 1.
    ResidueSequence witness{2};
    bool witness_lex_smallest = false;
    DavenportMethod method = DavenportMethod::exhaustive;
    std::uint64_t formula_bound = 0;
    GroupShape shape;
    SearchStats stats;

    bool decided() const { return status == SearchStatus::exact; }
};

// 1 + sum (d_i - 1).
std::uint64_t davenport_formula_bound(const GroupShape& shape);

// prod g_i^[d_i - 1] over an invariant-factor basis; product-one free.
ResidueSequence davenport_formula_witness(const Factorization& f);

DavenportResult davenport_exact(std::uint64_t n, const SearchBudget& budget = {});
DavenportResult davenport_exact(const Factorization& f, const SearchBudget& budget = {});

}  // namespace ebc
