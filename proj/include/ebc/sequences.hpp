#pragma once

// Sequences over Z_n as finite multisets, their subsequence-product sets and
// the freeness predicates built on them.

#include "ebc/arith.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebc {

// Finite multiset of residues mod n. Iteration is in nondecreasing residue
// order, which is also the canonical form used for identity and tie-breaking.
class ResidueSequence {
public:
    explicit ResidueSequence(std::uint64_t n);
    // Terms are reduced mod n.
    ResidueSequence(std::uint64_t n, std::span<const Residue> terms);
    ResidueSequence(std::uint64_t n, std::initializer_list<Residue> terms);

    std::uint64_t n() const { return n_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    std::uint64_t multiplicity(Residue a) const;
    const std::map<Residue, std::uint64_t>& counts() const { return counts_; }

    // Canonical (nondecreasing) term list.
    std::vector<Residue> terms() const;

    void push(Residue a, std::uint64_t times = 1);
    // Removes the terms of other; throws PreconditionError unless other | *this.
    void remove(const ResidueSequence& other);

    bool divides(const ResidueSequence& other) const;  // *this | other
    ResidueSequence concat(const ResidueSequence& other) const;

    friend bool operator==(const ResidueSequence& a, const ResidueSequence& b) {
        return a.n_ == b.n_ && a.counts_ == b.counts_;
    }
    // Lexicographic on the canonical term list.
    friend bool operator<(const ResidueSequence& a, const ResidueSequence& b);

private:
    std::uint64_t n_;
    std::map<Residue, std::uint64_t> counts_;
    std::size_t size_ = 0;
};

// Set of products of nonempty subsequences, as a bit vector of width n.
class ProductSet {
public:
    explicit ProductSet(std::uint64_t n);

    std::uint64_t n() const { return n_; }
    bool contains(Residue a) const { return (bits_[a / 64] >> (a % 64)) & 1; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::vector<Residue> members() const;

    // S -> S u {a} u a*S
    void absorb(Residue a);
    bool intersects(const IdempotentSet& e) const;

    friend bool operator==(const ProductSet&, const ProductSet&) = default;

private:
    void set(Residue a) { bits_[a / 64] |= std::uint64_t{1} << (a % 64); }

    std::uint64_t n_;
    std::vector<std::uint64_t> bits_;
};

// Product of all terms; DomainError on the empty sequence.
Residue pi(const ResidueSequence& t);

ProductSet product_set(const ResidueSequence& t);
// Insertion order is significant only for the running sets, not the result.
ProductSet product_set(std::uint64_t n, std::span<const Residue> ordered_terms);

// DomainError when the moduli differ.
bool is_idempotent_product_free(const ResidueSequence& t, const IdempotentSet& e);
bool is_product_one_free(const ResidueSequence& t);

// Smallest (length, then lexicographic) nonempty sub-multiset with product 1.
// Every term must be a unit (DomainError otherwise).
std::optional<ResidueSequence> find_product_one_subsequence(const ResidueSequence& t);

// Smallest (length, then lexicographic on the original terms) nonempty
// sub-multiset W of t such that the product of image(a) over a in W lies in
// targets. The image map is applied per term and products are taken mod n.
std::optional<ResidueSequence> smallest_subsequence_with_product_in(
    const ResidueSequence& t, std::span<const Residue> targets,
    const std::function<Residue(Residue)>& image = {});

// Sizes |S_1|, ..., |S_l| of the running product sets along the given order.
std::vector<std::size_t> running_product_set_sizes(std::uint64_t n, std::span<const Residue> ordered_terms);

// Along any free sequence each term enlarges the running product set.
bool strict_growth_holds(std::uint64_t n, std::span<const Residue> ordered_terms);

// "5,7,2". Values >= n are rejected unless reduce is set; with reduce, negative
// values are accepted and reduced too.
ResidueSequence parse_sequence(std::string_view literal, std::uint64_t n, bool reduce = false);
std::string format_terms(std::span<const Residue> terms);
std::string format_sequence(const ResidueSequence& t);

}  // namespace ebc
