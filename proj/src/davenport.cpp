#include "ebc/davenport.hpp"

#include "ebc/errors.hpp"
#include "free_search.hpp"
#include "symmetry.hpp"

#include <numeric>

namespace ebc {

namespace {
// Unit-group automorphisms used to merge search states.
constexpr std::size_t kMaxAutomorphisms = 256;
}  // namespace

std::string_view to_string(SearchStatus s) {
    return s == SearchStatus::exact ? "exact" : "undecided";
}

std::string_view to_string(DavenportMethod m) {
    return m == DavenportMethod::exhaustive ? "exhaustive" : "formula-cross-checked";
}

std::uint64_t davenport_formula_bound(const GroupShape& shape) {
    std::uint64_t bound = 1;
    for (auto d : shape.invariant_factors) bound += d - 1;
    return bound;
}

ResidueSequence davenport_formula_witness(const Factorization& f) {
    ResidueSequence v(f.n());
    for (const auto& g : unit_group_basis(f)) v.push(g.generator, g.order - 1);
    return v;
}

DavenportResult davenport_exact(std::uint64_t n, const SearchBudget& budget) {
    return davenport_exact(factorize(n), budget);
}

DavenportResult davenport_exact(const Factorization& f, const SearchBudget& budget) {
    const std::uint64_t n = f.n();
    if (n > kMaxConstantModulus)
        throw DomainError("davenport_exact: n = " + std::to_string(n) + " exceeds the supported maximum " +
                          std::to_string(kMaxConstantModulus));
    DavenportResult result;
    result.n = n;
    result.shape = unit_group_shape(f);
    result.formula_bound = davenport_formula_bound(result.shape);
    const std::uint64_t phi = euler_phi(f);

    const ResidueSequence seed = davenport_formula_witness(f);
    if (seed.size() + 1 != result.formula_bound || !is_product_one_free(seed))
        throw InconsistencyError("invariant-factor construction is not product-one free mod " + std::to_string(n));

    detail::FreeSearchProblem problem;
    problem.n = n;
    for (Residue u : units(n))
        if (u != 1) problem.candidates.push_back(u);
    problem.forbidden = {1};
    problem.capacity = phi - 1;
    problem.uncapped = phi <= budget.uncapped_group_order;
    if (n <= detail::kMaxSearchModulus) problem.symmetries = detail::unit_group_automorphisms(f, kMaxAutomorphisms);

    const auto seed_terms = seed.terms();
    const auto outcome = detail::maximize_free_sequence(problem, seed_terms, budget);

    result.status = outcome.decided ? SearchStatus::exact : SearchStatus::undecided;
    result.lower = outcome.best_length + 1;
    result.upper = outcome.upper_length + 1;
    result.value = result.lower;
    result.witness = ResidueSequence(n, outcome.witness);
    result.witness_lex_smallest = outcome.witness_lex_smallest;
    result.method = outcome.decided && seed.size() == problem.capacity ? DavenportMethod::formula_cross_checked
                                                                        : DavenportMethod::exhaustive;
    result.stats = outcome.stats;

    const auto w = result.witness.terms();
    for (Residue a : w)
        if (std::gcd(a, n) != 1) throw InconsistencyError("Davenport witness contains a non-unit");
    if (!is_product_one_free(result.witness) || !strict_growth_holds(n, w))
        throw InconsistencyError("Davenport witness is not product-one free mod " + std::to_string(n));
    if (result.lower < result.formula_bound || result.upper > phi)
        throw InconsistencyError("Davenport bounds violate [formula bound, phi(n)] mod " + std::to_string(n));
    return result;
}

}  // namespace ebc
