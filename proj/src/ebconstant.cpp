#include "ebc/ebconstant.hpp"

#include "ebc/errors.hpp"
#include "free_search.hpp"
#include "symmetry.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <thread>

namespace ebc {

namespace {

void require_same_modulus(const ResidueSequence& t, const DavenportResult& d, const char* where) {
    if (t.n() != d.n)
        throw DomainError(std::string(where) + ": Davenport result is for modulus " + std::to_string(d.n) +
                          ", sequence is mod " + std::to_string(t.n()));
    if (!d.decided())
        throw UndecidedError(std::string(where) + ": D((Z/" + std::to_string(d.n) + "Z)^x) is undecided");
}

void require_idempotent_product(const ResidueSequence& w, const Factorization& f, const char* where) {
    if (w.empty() || !idempotent_by_components(pi(w), f))
        throw InconsistencyError(std::string(where) + ": extracted subsequence has no idempotent product");
}

}  // namespace

std::vector<Residue> presentation_order(const ResidueSequence& t) {
    std::vector<Residue> units_part, rest;
    for (Residue a : t.terms()) (std::gcd(a, t.n()) == 1 ? units_part : rest).push_back(a);
    units_part.insert(units_part.end(), rest.begin(), rest.end());
    return units_part;
}

ResidueSequence construct_extremal(const Factorization& f, const DavenportResult& d) {
    if (!d.decided())
        throw UndecidedError("construct_extremal: D((Z/" + std::to_string(f.n()) + "Z)^x) is undecided");
    if (d.n != f.n()) throw DomainError("construct_extremal: Davenport result is for another modulus");
    ResidueSequence t = d.witness;
    for (const auto& pp : f.factors()) t.push(pp.prime % f.n(), pp.exponent - 1);
    if (t.size() + 1 != d.value + f.big_omega() - f.small_omega() || !is_idempotent_product_free(t, idempotents(f)))
        throw InconsistencyError("construct_extremal: construction mod " + std::to_string(f.n()) +
                                 " is not idempotent-product free");
    return t;
}

ResidueSequence construct_extremal(std::uint64_t n, const SearchBudget& budget) {
    const Factorization f = factorize(n);
    return construct_extremal(f, davenport_exact(f, budget));
}

EBResult eb_exact(std::uint64_t n, const SearchBudget& budget) {
    const Factorization f = factorize(n);
    return eb_exact(f, davenport_exact(f, budget), budget);
}

EBResult eb_exact(const Factorization& f, const DavenportResult& d, const SearchBudget& budget) {
    const std::uint64_t n = f.n();
    if (d.n != n) throw DomainError("eb_exact: Davenport result is for another modulus");
    const IdempotentSet e = idempotents(f);

    EBResult result;
    result.n = n;
    result.davenport = d;
    if (d.decided()) result.lower_bound = d.value + f.big_omega() - f.small_omega();

    // The construction only needs V product-one free, so the best known
    // Davenport witness seeds the search even when D itself is undecided.
    ResidueSequence seed = d.witness;
    for (const auto& pp : f.factors()) seed.push(pp.prime % n, pp.exponent - 1);
    if (!is_idempotent_product_free(seed, e))
        throw InconsistencyError("eb_exact: lower-bound construction mod " + std::to_string(n) + " is not free");

    detail::FreeSearchProblem problem;
    problem.n = n;
    for (Residue a = 0; a < n; ++a)
        if (!e.contains(a)) problem.candidates.push_back(a);
    problem.forbidden = e.members();
    problem.capacity = n - e.size();
    problem.uncapped = n <= budget.uncapped_group_order;
    if (n <= detail::kMaxSearchModulus) problem.symmetries = detail::semigroup_power_automorphisms(f);

    const auto seed_terms = seed.terms();
    const auto outcome = detail::maximize_free_sequence(problem, seed_terms, budget);

    result.status = outcome.decided ? SearchStatus::exact : SearchStatus::undecided;
    result.lower = outcome.best_length + 1;
    result.upper = outcome.upper_length + 1;
    result.value = result.lower;
    result.witness = ResidueSequence(n, outcome.witness);
    result.witness_lex_smallest = outcome.witness_lex_smallest;
    result.stats = outcome.stats;

    if (!is_idempotent_product_free(result.witness, e) || !strict_growth_holds(n, outcome.witness))
        throw InconsistencyError("eb_exact: witness mod " + std::to_string(n) + " is not free");
    if (result.lower_bound && result.lower < *result.lower_bound)
        throw InconsistencyError("eb_exact: value below D + Omega - omega mod " + std::to_string(n));
    if (result.upper > n - e.size() + 1)
        throw InconsistencyError("eb_exact: bracket exceeds the strict-growth bound mod " + std::to_string(n));
    return result;
}

ResidueSequence extract_witness_prime_power(const ResidueSequence& t, const DavenportResult& d) {
    require_same_modulus(t, d, "extract_witness_prime_power");
    const Factorization f = factorize(t.n());
    if (!f.is_prime_power())
        throw DomainError("extract_witness_prime_power: " + std::to_string(t.n()) + " is not a prime power");
    const std::uint64_t p = f.factors()[0].prime;
    const std::uint32_t k = f.factors()[0].exponent;
    if (t.size() < d.value + k - 1)
        throw PreconditionError("extract_witness_prime_power: need at least " + std::to_string(d.value + k - 1) +
                                " terms, got " + std::to_string(t.size()));

    ResidueSequence divisible(t.n()), coprime(t.n());
    for (const auto& [a, c] : t.counts()) (a % p == 0 ? divisible : coprime).push(a, c);

    std::optional<ResidueSequence> w;
    if (divisible.size() >= k) {
        const Residue zero[] = {0};
        w = smallest_subsequence_with_product_in(divisible, zero);
    } else {
        // |coprime| >= D, so a product-one subsequence exists.
        w = find_product_one_subsequence(coprime);
    }
    if (!w) throw InconsistencyError("extract_witness_prime_power: pigeonhole branch found nothing");
    require_idempotent_product(*w, f, "extract_witness_prime_power");
    return *w;
}

ResidueSequence extract_witness_squarefree(const ResidueSequence& t, const DavenportResult& d) {
    require_same_modulus(t, d, "extract_witness_squarefree");
    const Factorization f = factorize(t.n());
    if (!f.is_squarefree())
        throw DomainError("extract_witness_squarefree: " + std::to_string(t.n()) + " is not squarefree");
    if (t.size() < d.value)
        throw PreconditionError("extract_witness_squarefree: need at least " + std::to_string(d.value) +
                                " terms, got " + std::to_string(t.size()));
    const Residue one[] = {1};
    const auto w = smallest_subsequence_with_product_in(t, one, [&f](Residue a) { return lift_to_unit(a, f); });
    if (!w) throw InconsistencyError("extract_witness_squarefree: lifted sequence has no product-one subsequence");
    require_idempotent_product(*w, f, "extract_witness_squarefree");
    return *w;
}

std::string_view to_string(ExtractionRoute r) {
    return r == ExtractionRoute::prime_power ? "prime-power" : "squarefree";
}

Extraction extract_witness(const ResidueSequence& t, const DavenportResult& d) {
    const Factorization f = factorize(t.n());
    if (f.is_prime_power()) return {ExtractionRoute::prime_power, extract_witness_prime_power(t, d)};
    if (f.is_squarefree()) return {ExtractionRoute::squarefree, extract_witness_squarefree(t, d)};
    throw DomainError("extract_witness: " + std::to_string(t.n()) + " = " + f.to_string() +
                      " is neither a prime power nor squarefree");
}

TheoremReport verify_theorem(std::uint64_t n, const SearchBudget& budget) {
    const Factorization f = factorize(n);
    TheoremReport report;
    report.n = n;
    report.factorization = f.to_string();
    report.omega = f.small_omega();
    report.big_omega = f.big_omega();
    report.coverage = f.is_prime_power() ? Coverage::prime_power
                      : f.is_squarefree() ? Coverage::squarefree
                                          : Coverage::none;
    report.davenport = davenport_exact(f, budget);
    const IdempotentSet e = idempotents(f);

    if (report.davenport.decided()) {
        // Certified independently of the Erdos-Burgess search.
        ResidueSequence t = report.davenport.witness;
        for (const auto& pp : f.factors()) t.push(pp.prime % n, pp.exponent - 1);
        report.construction = presentation_order(t);
        report.construction_free = is_idempotent_product_free(t, e) && strict_growth_holds(n, *report.construction);
        report.lower_bound = report.davenport.value + f.big_omega() - f.small_omega();
        if (!report.construction_free) report.violations.push_back("lower-bound construction is not free");
        if (t.size() + 1 != *report.lower_bound) report.violations.push_back("construction has the wrong length");
    }

    report.eb = eb_exact(f, report.davenport, budget);
    if (report.eb.decided() && report.lower_bound) {
        report.equality = report.eb.value == *report.lower_bound;
        if (report.eb.value < *report.lower_bound) report.violations.push_back("I(S_R) below D + Omega - omega");
        if (report.coverage != Coverage::none && !*report.equality)
            report.violations.push_back("I(S_R) differs from D + Omega - omega where equality is proved");
    }
    if (report.eb.decided() && report.eb.value > n - e.size() + 1)
        report.violations.push_back("I(S_R) exceeds n - 2^omega + 1");
    return report;
}

std::string_view to_string(ScanStatus s) {
    switch (s) {
        case ScanStatus::theorem_prime_power: return "THEOREM_PRIME_POWER";
        case ScanStatus::theorem_squarefree: return "THEOREM_SQUAREFREE";
        case ScanStatus::conjecture_verified: return "CONJECTURE_VERIFIED";
        case ScanStatus::counterexample: return "COUNTEREXAMPLE";
        case ScanStatus::undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

ScanRow scan_row(std::uint64_t n, const SearchBudget& budget) {
    ScanRow row;
    row.n = n;
    try {
        const Factorization f = factorize(n);
        row.factorization = f.to_string();
        row.omega = f.small_omega();
        row.big_omega = f.big_omega();
        const TheoremReport report = verify_theorem(n, budget);
        const auto& d = report.davenport;
        const auto& eb = report.eb;
        if (d.decided()) row.davenport = d.value;
        row.davenport_lower = d.lower;
        row.davenport_upper = d.upper;
        row.davenport_witness = d.witness.terms();
        row.lower_bound = report.lower_bound;
        row.eb_lower = eb.lower;
        row.eb_upper = eb.upper;
        row.eb_searched = eb.decided();
        row.witness = presentation_order(eb.witness);
        row.violations = report.violations;
        row.stats = eb.stats;
        row.stats.nodes += d.stats.nodes;
        row.stats.seconds += d.stats.seconds;

        if (!d.decided()) {
            row.status = ScanStatus::undecided;
        } else if (report.coverage != Coverage::none) {
            row.status = report.coverage == Coverage::prime_power ? ScanStatus::theorem_prime_power
                                                                  : ScanStatus::theorem_squarefree;
            // Proved equal; the search, when it finishes, confirms it.
            row.eb_value = eb.decided() ? eb.value : *report.lower_bound;
            if (!eb.decided()) {
                row.eb_lower = row.eb_upper = *report.lower_bound;
                if (report.construction) row.witness = *report.construction;
            }
        } else if (eb.decided()) {
            row.eb_value = eb.value;
            row.status = eb.value == *report.lower_bound ? ScanStatus::conjecture_verified : ScanStatus::counterexample;
        } else {
            row.status = ScanStatus::undecided;
        }
    } catch (const InconsistencyError& ex) {
        row.status = ScanStatus::undecided;
        row.violations.push_back(ex.what());
    } catch (const std::exception& ex) {
        row.status = ScanStatus::undecided;
        row.error = ex.what();
    }
    return row;
}

std::vector<ScanRow> conjecture_scan(std::uint64_t n_lo, std::uint64_t n_hi, const SearchBudget& budget, unsigned jobs,
                                     const std::function<void(const ScanRow&)>& on_row) {
    if (n_lo < 2 || n_lo > n_hi) throw DomainError("conjecture_scan: need 2 <= from <= to");
    const std::size_t count = n_hi - n_lo + 1;
    std::vector<ScanRow> rows(count);
    std::vector<char> ready(count, 0);
    std::mutex mutex;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            ScanRow row = scan_row(n_lo + i, budget);
            std::lock_guard lock(mutex);
            rows[i] = std::move(row);
            ready[i] = 1;
            cv.notify_all();
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::size_t>(count, 1024))));
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);

    for (std::size_t i = 0; i < count; ++i) {
        std::unique_lock lock(mutex);
        cv.wait(lock, [&] { return ready[i] != 0; });
        lock.unlock();
        if (on_row) on_row(rows[i]);
    }
    for (auto& t : pool) t.join();
    return rows;
}

}  // namespace ebc
