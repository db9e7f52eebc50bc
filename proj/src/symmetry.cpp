#include "symmetry.hpp"

#include "ebc/unitgroup.hpp"

#include <numeric>

namespace ebc::detail {

namespace {

// Bound on basis-image tuples tried before giving up on finding more maps.
constexpr std::size_t kMaxAttempts = std::size_t{1} << 20;

struct BasisEnumerator {
    const Factorization& f;
    std::uint64_t n;
    std::vector<CyclicGenerator> basis;
    std::vector<std::vector<Residue>> image_choices;  // per basis element: units of the same order
    std::vector<Residue> chosen;
    std::vector<Permutation> out;
    std::size_t max_count;
    std::size_t attempts = 0;

    void run() {
        image_choices.resize(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (Residue u : units(n))
                if (element_order(u, n) == basis[i].order) image_choices[i].push_back(u);
        chosen.resize(basis.size());
        descend(0);
    }

    bool done() const { return out.size() >= max_count || attempts >= kMaxAttempts; }

    void descend(std::size_t i) {
        if (done()) return;
        if (i == basis.size()) {
            ++attempts;
            consider();
            return;
        }
        for (Residue h : image_choices[i]) {
            chosen[i] = h;
            descend(i + 1);
            if (done()) return;
        }
    }

    // Walk every exponent tuple, mapping prod g_i^e_i to prod h_i^e_i.
    void consider() {
        Permutation perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<char> hit(n, 0);
        std::vector<std::uint64_t> e(basis.size(), 0);
        Residue source = 1 % n, target = 1 % n;
        bool identity = true;
        while (true) {
            if (hit[target]) return;
            hit[target] = 1;
            perm[source] = static_cast<std::uint32_t>(target);
            identity = identity && source == target;
            std::size_t i = 0;
            for (; i < basis.size(); ++i) {
                source = mul_mod(source, basis[i].generator, n);
                target = mul_mod(target, chosen[i], n);
                if (++e[i] < basis[i].order) break;
                e[i] = 0;  // g_i^{d_i} = 1, so source and target wrapped already
            }
            if (i == basis.size()) break;
        }
        if (!identity) out.push_back(std::move(perm));
    }
};

}  // namespace

std::vector<Permutation> unit_group_automorphisms(const Factorization& f, std::size_t max_count) {
    BasisEnumerator walker{f, f.n(), unit_group_basis(f), {}, {}, {}, max_count};
    walker.run();
    return std::move(walker.out);
}

std::vector<Permutation> semigroup_power_automorphisms(const Factorization& f) {
    const std::uint64_t n = f.n();
    const std::uint64_t lambda = carmichael_lambda(f);
    std::vector<Permutation> maps;
    for (std::uint64_t u = 2; u < lambda; ++u) {
        if (std::gcd(u, lambda) != 1) continue;
        Permutation perm(n);
        std::vector<char> hit(n, 0);
        bool bijective = true;
        for (std::uint64_t x = 0; x < n && bijective; ++x) {
            perm[x] = static_cast<std::uint32_t>(pow_mod(x, u, n));
            bijective = !hit[perm[x]];
            hit[perm[x]] = 1;
        }
        if (bijective) maps.push_back(std::move(perm));
    }
    return maps;
}

}  // namespace ebc::detail
