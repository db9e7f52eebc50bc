#pragma once

// Integer arithmetic on Z_n: factorization, CRT and the idempotents of the
// multiplicative semigroup.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ebc {

using Residue = std::uint64_t;

// Largest modulus accepted by factorize(). Everything below 2^64 is handled
// (trial division, then Miller-Rabin and Pollard-Brent on the cofactor).
inline constexpr std::uint64_t kMaxModulus = ~std::uint64_t{0};

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;

    std::uint64_t value() const;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class Factorization {
public:
    // Validates the invariants (increasing certified primes, positive
    // exponents, product equals n); throws DomainError otherwise.
    Factorization(std::uint64_t n, std::vector<PrimePower> factors);

    std::uint64_t n() const { return n_; }
    const std::vector<PrimePower>& factors() const { return factors_; }

    // Omega(n): prime factors counted with multiplicity.
    std::uint32_t big_omega() const;
    // omega(n): distinct prime factors.
    std::uint32_t small_omega() const { return static_cast<std::uint32_t>(factors_.size()); }

    bool is_prime_power() const { return factors_.size() == 1; }
    bool is_squarefree() const;

    // "2^2*3"
    std::string to_string() const;

private:
    std::uint64_t n_;
    std::vector<PrimePower> factors_;
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

Factorization factorize(std::uint64_t n);

inline std::uint32_t big_omega(const Factorization& f) { return f.big_omega(); }
inline std::uint32_t small_omega(const Factorization& f) { return f.small_omega(); }

// a is reduced mod n first.
bool is_idempotent(Residue a, std::uint64_t n);

// Idempotents of Z_n, one per {0,1}-choice at each prime power.
class IdempotentSet {
public:
    explicit IdempotentSet(const Factorization& f);

    std::uint64_t n() const { return n_; }
    const std::vector<Residue>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(Residue a) const;

private:
    std::uint64_t n_;
    std::vector<Residue> members_;     // ascending
    std::vector<std::uint64_t> bits_;  // width n; empty when n is too large to index
};

IdempotentSet idempotents(std::uint64_t n);
IdempotentSet idempotents(const Factorization& f);

struct Congruence {
    Residue residue;
    std::uint64_t modulus;
};

// Unique x in [0, prod m_i) solving every congruence. Residues are reduced.
// Throws DomainError when moduli are not pairwise coprime or the product
// overflows 64 bits.
Residue crt_combine(std::span<const Congruence> system);

// Maps a to a' with a' = 1 mod p where p | a and a' = a mod p otherwise.
// n must be squarefree (DomainError).
Residue lift_to_unit(Residue a, const Factorization& f);

// True when a mod p^k is 0 or 1 for every prime-power component of n.
bool idempotent_by_components(Residue a, const Factorization& f);

}  // namespace ebc
