#pragma once

// The modular Erdos-Burgess constant I(S_{Z_n}): the least l such that every
// l integers contain a nonempty subsequence whose product is idempotent mod n.
//
// Everything here works on residues. A sequence of integers is
// idempotent-product free mod n exactly when the sequence of its residue
// classes is idempotent-product free in the multiplicative semigroup of Z_n,
// and integers may repeat a class any number of times, so searching multisets
// of residues with unbounded multiplicity computes the integer-level constant.

#include "ebc/arith.hpp"
#include "ebc/budget.hpp"
#include "ebc/davenport.hpp"
#include "ebc/sequences.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ebc {

// Listing order for witnesses: unit terms ascending, then non-units ascending.
// For the lower-bound construction this is V followed by the prime powers.
std::vector<Residue> presentation_order(const ResidueSequence& t);

// V . prod p_i^[k_i - 1] where V is the Davenport witness. Verified
// idempotent-product free before returning (InconsistencyError otherwise).
// UndecidedError when d is undecided.
ResidueSequence construct_extremal(const Factorization& f, const DavenportResult& d);
ResidueSequence construct_extremal(std::uint64_t n, const SearchBudget& budget = {});

struct EBResult {
    std::uint64_t n = 0;
    SearchStatus status = SearchStatus::undecided;
    std::uint64_t value = 0;  // I(S_R) when exact; equals lower otherwise
    std::uint64_t lower = 0;  // proved bracket on I
    std::uint64_t upper = 0;
    // D(R^x) + Omega(n) - omega(n); absent when D is undecided.
    std::optional<std::uint64_t> lower_bound;
    ResidueSequence witness{2};  // free, |witness| = lower - 1
    bool witness_lex_smallest = false;
    DavenportResult davenport;
    SearchStats stats;

    bool decided() const { return status == SearchStatus::exact; }
};

EBResult eb_exact(std::uint64_t n, const SearchBudget& budget = {});
// Reuses an already computed Davenport result for the same modulus.
EBResult eb_exact(const Factorization& f, const DavenportResult& d, const SearchBudget& budget = {});

// n = p^k and |T| >= D + k - 1: split off the terms divisible by p; either k
// of them (or fewer with enough p-adic weight) multiply to 0 mod p^k, or the
// remaining units contain a product-one subsequence. Returns the smallest
// such W (length, then lexicographic) from whichever branch applies.
ResidueSequence extract_witness_prime_power(const ResidueSequence& t, const DavenportResult& d);

// n squarefree and |T| >= D: lift every term to a unit, take a product-one
// subsequence of the lifts and return the corresponding original terms.
ResidueSequence extract_witness_squarefree(const ResidueSequence& t, const DavenportResult& d);

enum class ExtractionRoute { prime_power, squarefree };
std::string_view to_string(ExtractionRoute r);

struct Extraction {
    ExtractionRoute route;
    ResidueSequence subsequence;
};

// Dispatches on the shape of n (prime powers take the prime-power route);
// DomainError when n is neither a prime power nor squarefree.
Extraction extract_witness(const ResidueSequence& t, const DavenportResult& d);

enum class Coverage { none, prime_power, squarefree };

struct TheoremReport {
    std::uint64_t n = 0;
    std::string factorization;
    std::uint32_t omega = 0;
    std::uint32_t big_omega = 0;
    Coverage coverage = Coverage::none;
    DavenportResult davenport;
    std::optional<std::vector<Residue>> construction;  // presentation order
    bool construction_free = false;
    std::optional<std::uint64_t> lower_bound;
    EBResult eb;
    // Set when I is exact and the theorem covers n.
    std::optional<bool> equality;
    std::vector<std::string> violations;

    bool consistent() const { return violations.empty(); }
};

TheoremReport verify_theorem(std::uint64_t n, const SearchBudget& budget = {});

enum class ScanStatus { theorem_prime_power, theorem_squarefree, conjecture_verified, counterexample, undecided };
std::string_view to_string(ScanStatus s);

struct ScanRow {
    std::uint64_t n = 0;
    std::string factorization;
    std::uint32_t omega = 0;
    std::uint32_t big_omega = 0;
    std::optional<std::uint64_t> davenport;
    std::uint64_t davenport_lower = 0;
    std::uint64_t davenport_upper = 0;
    std::optional<std::uint64_t> lower_bound;
    std::optional<std::uint64_t> eb_value;
    std::uint64_t eb_lower = 0;
    std::uint64_t eb_upper = 0;
    // The exhaustive search confirmed eb_value (as opposed to the theorem alone).
    bool eb_searched = false;
    ScanStatus status = ScanStatus::undecided;
    std::vector<Residue> witness;            // presentation order
    std::vector<Residue> davenport_witness;  // canonical order
    std::vector<std::string> violations;
    std::string error;
    SearchStats stats;
};

ScanRow scan_row(std::uint64_t n, const SearchBudget& budget = {});

// Rows are delivered to on_row (if given) and returned in ascending n,
// whatever the completion order of the jobs worker threads.
std::vector<ScanRow> conjecture_scan(std::uint64_t n_lo, std::uint64_t n_hi, const SearchBudget& budget = {},
                                     unsigned jobs = 1, const std::function<void(const ScanRow&)>& on_row = {});

}  // namespace ebc
