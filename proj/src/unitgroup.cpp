#include "ebc/unitgroup.hpp"

#include "ebc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ebc {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

// Cyclic components of (Z/p^kZ)^x with generators lifted to residues mod n.
struct Component {
    Residue generator;  // mod n; 1 in every other prime-power component
    std::uint64_t order;
};

Residue lift_component(Residue g, std::size_t index, const Factorization& f) {
    std::vector<Congruence> system;
    for (std::size_t i = 0; i < f.factors().size(); ++i) {
        const auto q = f.factors()[i].value();
        system.push_back({i == index ? g % q : 1 % q, q});
    }
    return crt_combine(system);
}

std::vector<Component> primary_components(const Factorization& f) {
    std::vector<Component> out;
    for (std::size_t i = 0; i < f.factors().size(); ++i) {
        const auto& pp = f.factors()[i];
        const std::uint64_t q = pp.value();
        if (pp.prime == 2) {
            if (pp.exponent == 2) out.push_back({lift_component(3, i, f), 2});
            if (pp.exponent >= 3) {
                out.push_back({lift_component(q - 1, i, f), 2});
                out.push_back({lift_component(5, i, f), q / 4});
            }
            continue;
        }
        const std::uint64_t phi = q / pp.prime * (pp.prime - 1);
        Residue g = 2;
        while (std::gcd(g, q) != 1 || element_order(g, q) != phi) ++g;
        out.push_back({lift_component(g, i, f), phi});
    }
    return out;
}

std::vector<PrimePower> prime_powers_of(std::uint64_t m) {
    return m < 2 ? std::vector<PrimePower>{} : factorize(m).factors();
}

}  // namespace

std::uint64_t GroupShape::order() const {
    std::uint64_t total = 1;
    for (auto d : invariant_factors) total *= d;
    return total;
}

std::uint64_t GroupShape::exponent() const {
    return invariant_factors.empty() ? 1 : invariant_factors.back();
}

GroupShape GroupShape::from_cyclic_orders(std::vector<std::uint64_t> orders) {
    // Pairwise gcd/lcm replacement until the list is a divisibility chain.
    orders.erase(std::remove(orders.begin(), orders.end(), std::uint64_t{1}), orders.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            for (std::size_t j = i + 1; j < orders.size(); ++j) {
                const auto g = std::gcd(orders[i], orders[j]);
                const auto l = lcm_u64(orders[i], orders[j]);
                if (orders[i] != g || orders[j] != l) {
                    orders[i] = g;
                    orders[j] = l;
                    changed = true;
                }
            }
        }
    }
    orders.erase(std::remove(orders.begin(), orders.end(), std::uint64_t{1}), orders.end());
    return GroupShape{orders};
}

std::vector<Residue> units(std::uint64_t n) {
    if (n < 2) throw DomainError("units: n must be at least 2");
    std::vector<Residue> out;
    for (Residue a = 1; a < n; ++a)
        if (std::gcd(a, n) == 1) out.push_back(a);
    return out;
}

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = 1;
    for (const auto& pp : f.factors()) phi *= pp.value() / pp.prime * (pp.prime - 1);
    return phi;
}

std::uint64_t carmichael_lambda(const Factorization& f) {
    return unit_group_shape(f).exponent();
}

GroupShape unit_group_shape(const Factorization& f) {
    std::vector<std::uint64_t> orders;
    for (const auto& pp : f.factors()) {
        const std::uint64_t q = pp.value();
        if (pp.prime == 2) {
            if (pp.exponent == 2) orders.push_back(2);
            if (pp.exponent >= 3) {
                orders.push_back(2);
                orders.push_back(q / 4);
            }
        } else {
            orders.push_back(q / pp.prime * (pp.prime - 1));
        }
    }
    return GroupShape::from_cyclic_orders(std::move(orders));
}

std::uint64_t element_order(Residue a, std::uint64_t n) {
    a %= n;
    if (std::gcd(a, n) != 1)
        throw DomainError("element_order: " + std::to_string(a) + " is not a unit mod " + std::to_string(n));
    // Divide lambda(n) down instead of stepping through powers.
    std::uint64_t t = carmichael_lambda(factorize(n));
    for (const auto& pp : prime_powers_of(t)) {
        for (std::uint32_t i = 0; i < pp.exponent && pow_mod(a, t / pp.prime, n) == 1 % n; ++i) t /= pp.prime;
    }
    return t;
}

std::vector<CyclicGenerator> unit_group_basis(const Factorization& f) {
    const std::uint64_t n = f.n();
    // Split each cyclic component into its primary parts, group them by prime.
    std::map<std::uint64_t, std::vector<CyclicGenerator>> by_prime;
    for (const auto& c : primary_components(f)) {
        for (const auto& pp : prime_powers_of(c.order)) {
            const std::uint64_t part = pp.value();
            by_prime[pp.prime].push_back({pow_mod(c.generator, c.order / part, n), part});
        }
    }
    std::size_t rank = 0;
    for (auto& [p, parts] : by_prime) {
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.order > b.order; });
        rank = std::max(rank, parts.size());
    }
    // The i-th largest invariant factor multiplies the i-th largest part of each prime.
    std::vector<CyclicGenerator> basis(rank, CyclicGenerator{1 % n, 1});
    for (const auto& [p, parts] : by_prime) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            basis[i].generator = mul_mod(basis[i].generator, parts[i].generator, n);
            basis[i].order *= parts[i].order;
        }
    }
    std::reverse(basis.begin(), basis.end());
    return basis;
}

std::vector<std::uint64_t> abstract_order_histogram(const GroupShape& shape) {
    const std::uint64_t order = shape.order();
    std::vector<std::uint64_t> histogram(shape.exponent() + 1, 0);
    // Mixed-radix walk over all tuples; element order is the lcm of component orders.
    std::vector<std::uint64_t> digits(shape.rank(), 0);
    for (std::uint64_t idx = 0; idx < order; ++idx) {
        std::uint64_t ord = 1;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            const auto d = shape.invariant_factors[i];
            ord = lcm_u64(ord, d / std::gcd(d, digits[i]));
        }
        ++histogram[ord];
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < shape.invariant_factors[i]) break;
            digits[i] = 0;
        }
    }
    return histogram;
}

}  // namespace ebc
