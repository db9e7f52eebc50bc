#pragma once

// Exhaustive search for the longest sequence over Z_n whose subsequence
// products avoid a forbidden set. Shared by the Davenport search (units,
// forbidden {1}) and the Erdos-Burgess search (all residues, forbidden = the
// idempotents).

#include "ebc/arith.hpp"
#include "ebc/budget.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ebc::detail {

struct FreeSearchProblem {
    std::uint64_t n = 0;
    std::vector<Residue> candidates;  // admissible terms, ascending
    std::vector<Residue> forbidden;   // products that must never occur
    // Number of residues a free product set can contain; since every term
    // enlarges the running product set, this bounds the free length.
    std::uint64_t capacity = 0;
    // Permutations of [0, n) preserving multiplication, candidates and the
    // forbidden set. Used to merge equivalent memo states; may be empty.
    std::vector<std::vector<std::uint32_t>> symmetries;
    bool uncapped = false;  // ignore max_states
};

struct FreeSearchResult {
    bool decided = false;
    std::size_t best_length = 0;    // longest free sequence found (proved maximal when decided)
    std::size_t upper_length = 0;   // proved upper bound on the free length
    std::vector<Residue> witness;   // canonical order, length best_length
    bool witness_lex_smallest = false;
    SearchStats stats;
};

// Largest modulus the bitset engine handles.
inline constexpr std::uint64_t kMaxSearchModulus = 1024;

// seed must already be a free sequence; it is the starting lower bound.
FreeSearchResult maximize_free_sequence(const FreeSearchProblem& problem, std::span<const Residue> seed,
                                        const SearchBudget& budget);

}  // namespace ebc::detail
