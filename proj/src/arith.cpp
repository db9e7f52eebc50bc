#include "ebc/arith.hpp"

#include "ebc/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ebc {

namespace {

constexpr std::uint64_t kTrialLimit = 1000000;
constexpr std::uint64_t kMaxIndexedModulus = std::uint64_t{1} << 26;

bool mul_overflows(std::uint64_t a, std::uint64_t b) {
    return b != 0 && a > ~std::uint64_t{0} / b;
}

std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr std::uint64_t block = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        for (std::uint64_t k = 0; k < r && g == 1; k += block) {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
                y = f(y);
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void split_cofactor(std::uint64_t m, std::vector<std::uint64_t>& primes) {
    if (m == 1) return;
    if (is_prime(m)) {
        primes.push_back(m);
        return;
    }
    std::uint64_t d = m;
    for (std::uint64_t c = 1; d == m; ++c) d = pollard_brent(m, c);
    split_cofactor(d, primes);
    split_cofactor(m / d, primes);
}

}  // namespace

std::uint64_t PrimePower::value() const {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) v *= prime;
    return v;
}

Factorization::Factorization(std::uint64_t n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {
    if (n_ < 2) throw DomainError("modulus must be at least 2, got " + std::to_string(n_));
    std::uint64_t product = 1;
    std::uint64_t previous = 0;
    for (const auto& pp : factors_) {
        if (pp.exponent == 0) throw DomainError("zero exponent in factorization");
        if (pp.prime <= previous) throw DomainError("primes must be strictly increasing");
        if (!is_prime(pp.prime)) throw DomainError(std::to_string(pp.prime) + " is not prime");
        for (std::uint32_t i = 0; i < pp.exponent; ++i) {
            if (mul_overflows(product, pp.prime)) throw DomainError("factorization overflows");
            product *= pp.prime;
        }
        previous = pp.prime;
    }
    if (product != n_) throw DomainError("factors do not multiply to " + std::to_string(n_));
}

std::uint32_t Factorization::big_omega() const {
    std::uint32_t total = 0;
    for (const auto& pp : factors_) total += pp.exponent;
    return total;
}

bool Factorization::is_squarefree() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::string Factorization::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << '*';
        out << factors_[i].prime;
        if (factors_[i].exponent > 1) out << '^' << factors_[i].exponent;
    }
    return out.str();
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    a %= m;
    while (e) {
        if (e & 1) result = mul_mod(result, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a deterministic witness set below 3.3 * 10^24.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Factorization factorize(std::uint64_t n) {
    if (n < 2) throw DomainError("factorize: n must be at least 2, got " + std::to_string(n));
    std::vector<PrimePower> factors;
    std::uint64_t m = n;
    auto take = [&](std::uint64_t p) {
        std::uint32_t k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (k) factors.push_back({p, k});
    };
    take(2);
    for (std::uint64_t p = 3; p <= kTrialLimit && p <= m / p; p += 2) take(p);
    if (m > 1) {
        if (m / kTrialLimit < kTrialLimit || is_prime(m)) {
            // No factor below the trial limit and m < limit^2, or certified prime.
            factors.push_back({m, 1});
        } else {
            std::vector<std::uint64_t> primes;
            split_cofactor(m, primes);
            std::sort(primes.begin(), primes.end());
            for (std::uint64_t p : primes) {
                if (!factors.empty() && factors.back().prime == p)
                    ++factors.back().exponent;
                else
                    factors.push_back({p, 1});
            }
        }
    }
    return Factorization(n, std::move(factors));
}

bool is_idempotent(Residue a, std::uint64_t n) {
    if (n == 0) throw DomainError("modulus must be positive");
    a %= n;
    return mul_mod(a, a, n) == a;
}

IdempotentSet::IdempotentSet(const Factorization& f) : n_(f.n()) {
    const auto& factors = f.factors();
    const std::size_t r = factors.size();
    std::vector<Congruence> system(r);
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << r); ++choice) {
        for (std::size_t i = 0; i < r; ++i)
            system[i] = {(choice >> i) & 1, factors[i].value()};
        members_.push_back(crt_combine(system));
    }
    std::sort(members_.begin(), members_.end());
    if (n_ <= kMaxIndexedModulus) {
        bits_.assign((n_ + 63) / 64, 0);
        for (Residue e : members_) bits_[e / 64] |= std::uint64_t{1} << (e % 64);
    }
}

bool IdempotentSet::contains(Residue a) const {
    a %= n_;
    if (!bits_.empty()) return (bits_[a / 64] >> (a % 64)) & 1;
    return std::binary_search(members_.begin(), members_.end(), a);
}

IdempotentSet idempotents(std::uint64_t n) { return IdempotentSet(factorize(n)); }
IdempotentSet idempotents(const Factorization& f) { return IdempotentSet(f); }

Residue crt_combine(std::span<const Congruence> system) {
    // Incremental Garner-style combine: x = x + M * t with t solving the next congruence.
    std::uint64_t x = 0;
    std::uint64_t modulus = 1;
    for (const auto& c : system) {
        if (c.modulus == 0) throw DomainError("crt_combine: zero modulus");
        if (std::gcd(modulus, c.modulus) != 1)
            throw DomainError("crt_combine: moduli are not pairwise coprime");
        if (mul_overflows(modulus, c.modulus)) throw DomainError("crt_combine: modulus product overflows");
        const std::uint64_t r = c.residue % c.modulus;
        if (c.modulus == 1) continue;
        // t = (r - x) * M^{-1} mod m_i
        const std::uint64_t m_inv = [&] {
            // modulus and c.modulus coprime; extended Euclid on signed 128-bit.
            __int128 a = static_cast<__int128>(modulus % c.modulus), b = c.modulus;
            __int128 x0 = 1, x1 = 0;
            while (b) {
                __int128 q = a / b;
                std::swap(a, b);
                b -= q * a;
                std::swap(x0, x1);
                x1 -= q * x0;
            }
            __int128 inv = x0 % static_cast<__int128>(c.modulus);
            if (inv < 0) inv += c.modulus;
            return static_cast<std::uint64_t>(inv);
        }();
        const std::uint64_t diff = (r + c.modulus - x % c.modulus) % c.modulus;
        const std::uint64_t t = mul_mod(diff, m_inv, c.modulus);
        x += modulus * t;
        modulus *= c.modulus;
    }
    return x;
}

Residue lift_to_unit(Residue a, const Factorization& f) {
    if (!f.is_squarefree())
        throw DomainError("lift_to_unit: " + std::to_string(f.n()) + " is not squarefree");
    std::vector<Congruence> system;
    system.reserve(f.factors().size());
    for (const auto& pp : f.factors()) {
        const std::uint64_t r = a % pp.prime;
        system.push_back({r == 0 ? 1 : r, pp.prime});
    }
    return crt_combine(system);
}

bool idempotent_by_components(Residue a, const Factorization& f) {
    return std::all_of(f.factors().begin(), f.factors().end(), [a](const PrimePower& pp) {
        const std::uint64_t r = a % pp.value();
        return r == 0 || r == 1;
    });
}

}  // namespace ebc
