#include "ebc/ebc.h"

#include "ebc/arith.hpp"
#include "ebc/davenport.hpp"
#include "ebc/ebconstant.hpp"
#include "ebc/errors.hpp"
#include "ebc/sequences.hpp"
#include "ebc/unitgroup.hpp"

#include <algorithm>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

struct ebc_davenport {
    ebc::DavenportResult result;
    std::vector<std::uint64_t> witness;
};

struct ebc_eb {
    ebc::EBResult result;
    std::vector<std::uint64_t> witness;
    ebc_davenport davenport;
};

struct ebc_report {
    ebc::TheoremReport report;
    ebc_davenport davenport;
    ebc_eb eb;
};

struct ebc_scan_row {
    ebc::ScanRow row;
    std::string status;
};

namespace {

thread_local std::string last_error;

ebc_status fail(ebc_status s, std::string message) {
    last_error = std::move(message);
    return s;
}

// Runs body, translating library exceptions into status codes.
template <class F>
ebc_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const ebc::ParseError& e) {
        return fail(EBC_ERR_PARSE, e.what());
    } catch (const ebc::DomainError& e) {
        return fail(EBC_ERR_DOMAIN, e.what());
    } catch (const ebc::PreconditionError& e) {
        return fail(EBC_ERR_PRECONDITION, e.what());
    } catch (const ebc::UndecidedError& e) {
        return fail(EBC_ERR_UNDECIDED, e.what());
    } catch (const ebc::InconsistencyError& e) {
        return fail(EBC_ERR_INCONSISTENT, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(EBC_ERR_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(EBC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(EBC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(EBC_ERR_INTERNAL, "unknown error");
    }
}

ebc_status copy_out(std::span<const std::uint64_t> values, uint64_t* out, size_t cap, size_t* count) {
    if (!count) return fail(EBC_ERR_ARGUMENT, "count is null");
    *count = values.size();
    if (cap < values.size()) return fail(EBC_ERR_BUFFER, "output buffer holds " + std::to_string(cap) + ", need " +
                                                              std::to_string(values.size()));
    if (!values.empty() && !out) return fail(EBC_ERR_ARGUMENT, "out is null");
    std::copy(values.begin(), values.end(), out);
    return EBC_OK;
}

ebc::SearchBudget to_budget(const ebc_budget* b) {
    ebc::SearchBudget budget;
    if (b) {
        budget.max_states = b->max_states;
        budget.max_seconds = b->max_seconds;
        budget.uncapped_group_order = b->uncapped_group_order;
    }
    return budget;
}

ebc::ResidueSequence to_sequence(std::uint64_t n, const uint64_t* terms, size_t len) {
    if (n < 2) throw ebc::DomainError("modulus must be at least 2");
    if (len && !terms) throw std::invalid_argument("terms is null");
    for (size_t i = 0; i < len; ++i)
        if (terms[i] >= n)
            throw ebc::DomainError("term " + std::to_string(terms[i]) + " is not a residue mod " + std::to_string(n));
    return ebc::ResidueSequence(n, std::span<const std::uint64_t>(terms, len));
}

ebc_stats to_stats(const ebc::SearchStats& s) { return {s.nodes, s.states, s.seconds}; }

void fill(ebc_davenport& h, ebc::DavenportResult r) {
    h.witness = r.witness.terms();
    h.result = std::move(r);
}

void fill(ebc_eb& h, ebc::EBResult r) {
    h.witness = ebc::presentation_order(r.witness);
    fill(h.davenport, r.davenport);
    h.result = std::move(r);
}

}  // namespace

extern "C" {

const char* ebc_status_name(ebc_status s) {
    switch (s) {
        case EBC_OK: return "ok";
        case EBC_ERR_DOMAIN: return "domain error";
        case EBC_ERR_PRECONDITION: return "precondition failed";
        case EBC_ERR_UNDECIDED: return "undecided at budget";
        case EBC_ERR_INCONSISTENT: return "internal inconsistency";
        case EBC_ERR_PARSE: return "parse error";
        case EBC_ERR_BUFFER: return "buffer too small";
        case EBC_ERR_ARGUMENT: return "invalid argument";
        case EBC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ebc_last_error(void) { return last_error.c_str(); }

const char* ebc_version(void) { return "1.0.0"; }

void ebc_budget_default(ebc_budget* budget) {
    if (!budget) return;
    const ebc::SearchBudget d;
    *budget = {d.max_states, d.max_seconds, d.uncapped_group_order};
}

ebc_status ebc_factorize(uint64_t n, uint64_t* primes, uint32_t* exponents, size_t cap, size_t* count) {
    return guarded([&] {
        if (!count) return fail(EBC_ERR_ARGUMENT, "count is null");
        const auto f = ebc::factorize(n);
        *count = f.factors().size();
        if (cap < *count) return fail(EBC_ERR_BUFFER, "output buffer too small");
        if (*count && (!primes || !exponents)) return fail(EBC_ERR_ARGUMENT, "output is null");
        for (size_t i = 0; i < *count; ++i) {
            primes[i] = f.factors()[i].prime;
            exponents[i] = f.factors()[i].exponent;
        }
        return EBC_OK;
    });
}

ebc_status ebc_omega(uint64_t n, uint32_t* omega, uint32_t* big_omega) {
    return guarded([&] {
        const auto f = ebc::factorize(n);
        if (omega) *omega = f.small_omega();
        if (big_omega) *big_omega = f.big_omega();
        return EBC_OK;
    });
}

ebc_status ebc_is_idempotent(uint64_t a, uint64_t n, int* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        *result = ebc::is_idempotent(a, n) ? 1 : 0;
        return EBC_OK;
    });
}

ebc_status ebc_idempotents(uint64_t n, uint64_t* out, size_t cap, size_t* count) {
    return guarded([&] { return copy_out(ebc::idempotents(n).members(), out, cap, count); });
}

ebc_status ebc_crt_combine(const uint64_t* residues, const uint64_t* moduli, size_t k, uint64_t* result) {
    return guarded([&] {
        if (!result || (k && (!residues || !moduli))) return fail(EBC_ERR_ARGUMENT, "null pointer");
        std::vector<ebc::Congruence> system;
        for (size_t i = 0; i < k; ++i) system.push_back({residues[i], moduli[i]});
        *result = ebc::crt_combine(system);
        return EBC_OK;
    });
}

ebc_status ebc_lift_to_unit(uint64_t a, uint64_t n, uint64_t* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        *result = ebc::lift_to_unit(a, ebc::factorize(n));
        return EBC_OK;
    });
}

ebc_status ebc_units(uint64_t n, uint64_t* out, size_t cap, size_t* count) {
    return guarded([&] { return copy_out(ebc::units(n), out, cap, count); });
}

ebc_status ebc_unit_group_shape(uint64_t n, uint64_t* out, size_t cap, size_t* count) {
    return guarded([&] {
        return copy_out(ebc::unit_group_shape(ebc::factorize(n)).invariant_factors, out, cap, count);
    });
}

ebc_status ebc_element_order(uint64_t a, uint64_t n, uint64_t* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        *result = ebc::element_order(a, n);
        return EBC_OK;
    });
}

ebc_status ebc_parse_sequence(const char* literal, uint64_t n, int reduce, uint64_t* out, size_t cap,
                              size_t* count) {
    return guarded([&] {
        if (!literal) return fail(EBC_ERR_ARGUMENT, "literal is null");
        return copy_out(ebc::parse_sequence(literal, n, reduce != 0).terms(), out, cap, count);
    });
}

ebc_status ebc_pi(uint64_t n, const uint64_t* terms, size_t len, uint64_t* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        *result = ebc::pi(to_sequence(n, terms, len));
        return EBC_OK;
    });
}

ebc_status ebc_product_set(uint64_t n, const uint64_t* terms, size_t len, uint64_t* out, size_t cap,
                           size_t* count) {
    return guarded([&] { return copy_out(ebc::product_set(to_sequence(n, terms, len)).members(), out, cap, count); });
}

ebc_status ebc_is_idempotent_product_free(uint64_t n, const uint64_t* terms, size_t len, int* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        *result = ebc::is_idempotent_product_free(to_sequence(n, terms, len), ebc::idempotents(n)) ? 1 : 0;
        return EBC_OK;
    });
}

ebc_status ebc_is_product_one_free(uint64_t n, const uint64_t* terms, size_t len, int* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        *result = ebc::is_product_one_free(to_sequence(n, terms, len)) ? 1 : 0;
        return EBC_OK;
    });
}

ebc_status ebc_strict_growth_holds(uint64_t n, const uint64_t* terms, size_t len, int* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        to_sequence(n, terms, len);
        *result = ebc::strict_growth_holds(n, std::span<const std::uint64_t>(terms, len)) ? 1 : 0;
        return EBC_OK;
    });
}

ebc_status ebc_find_product_one_subsequence(uint64_t n, const uint64_t* terms, size_t len, int* found,
                                            uint64_t* out, size_t cap, size_t* count) {
    return guarded([&] {
        if (!found) return fail(EBC_ERR_ARGUMENT, "found is null");
        const auto w = ebc::find_product_one_subsequence(to_sequence(n, terms, len));
        *found = w ? 1 : 0;
        return copy_out(w ? w->terms() : std::vector<std::uint64_t>{}, out, cap, count);
    });
}

ebc_status ebc_davenport_formula_bound(uint64_t n, uint64_t* result) {
    return guarded([&] {
        if (!result) return fail(EBC_ERR_ARGUMENT, "result is null");
        *result = ebc::davenport_formula_bound(ebc::unit_group_shape(ebc::factorize(n)));
        return EBC_OK;
    });
}

ebc_status ebc_davenport_compute(uint64_t n, const ebc_budget* budget, ebc_davenport** out) {
    return guarded([&] {
        if (!out) return fail(EBC_ERR_ARGUMENT, "out is null");
        *out = nullptr;
        auto h = std::make_unique<ebc_davenport>();
        fill(*h, ebc::davenport_exact(n, to_budget(budget)));
        *out = h.release();
        return EBC_OK;
    });
}

void ebc_davenport_free(ebc_davenport* d) { delete d; }
uint64_t ebc_davenport_n(const ebc_davenport* d) { return d ? d->result.n : 0; }
int ebc_davenport_decided(const ebc_davenport* d) { return d && d->result.decided() ? 1 : 0; }
uint64_t ebc_davenport_value(const ebc_davenport* d) { return d ? d->result.value : 0; }
uint64_t ebc_davenport_lower(const ebc_davenport* d) { return d ? d->result.lower : 0; }
uint64_t ebc_davenport_upper(const ebc_davenport* d) { return d ? d->result.upper : 0; }
uint64_t ebc_davenport_formula(const ebc_davenport* d) { return d ? d->result.formula_bound : 0; }

const char* ebc_davenport_method(const ebc_davenport* d) {
    return d ? ebc::to_string(d->result.method).data() : "";
}

ebc_status ebc_davenport_shape(const ebc_davenport* d, uint64_t* out, size_t cap, size_t* count) {
    if (!d) return fail(EBC_ERR_ARGUMENT, "null handle");
    return copy_out(d->result.shape.invariant_factors, out, cap, count);
}

ebc_status ebc_davenport_witness(const ebc_davenport* d, uint64_t* out, size_t cap, size_t* count) {
    if (!d) return fail(EBC_ERR_ARGUMENT, "null handle");
    return copy_out(d->witness, out, cap, count);
}

int ebc_davenport_witness_lex_smallest(const ebc_davenport* d) { return d && d->result.witness_lex_smallest; }
ebc_stats ebc_davenport_stats(const ebc_davenport* d) { return d ? to_stats(d->result.stats) : ebc_stats{}; }

ebc_status ebc_eb_compute(uint64_t n, const ebc_budget* budget, ebc_eb** out) {
    return guarded([&] {
        if (!out) return fail(EBC_ERR_ARGUMENT, "out is null");
        *out = nullptr;
        auto h = std::make_unique<ebc_eb>();
        fill(*h, ebc::eb_exact(n, to_budget(budget)));
        *out = h.release();
        return EBC_OK;
    });
}

void ebc_eb_free(ebc_eb* e) { delete e; }
uint64_t ebc_eb_n(const ebc_eb* e) { return e ? e->result.n : 0; }
int ebc_eb_decided(const ebc_eb* e) { return e && e->result.decided() ? 1 : 0; }
uint64_t ebc_eb_value(const ebc_eb* e) { return e ? e->result.value : 0; }
uint64_t ebc_eb_lower(const ebc_eb* e) { return e ? e->result.lower : 0; }
uint64_t ebc_eb_upper(const ebc_eb* e) { return e ? e->result.upper : 0; }

int ebc_eb_lower_bound(const ebc_eb* e, uint64_t* result) {
    if (!e || !e->result.lower_bound) return 0;
    if (result) *result = *e->result.lower_bound;
    return 1;
}

ebc_status ebc_eb_witness(const ebc_eb* e, uint64_t* out, size_t cap, size_t* count) {
    if (!e) return fail(EBC_ERR_ARGUMENT, "null handle");
    return copy_out(e->witness, out, cap, count);
}

int ebc_eb_witness_lex_smallest(const ebc_eb* e) { return e && e->result.witness_lex_smallest; }
const ebc_davenport* ebc_eb_davenport(const ebc_eb* e) { return e ? &e->davenport : nullptr; }
ebc_stats ebc_eb_stats(const ebc_eb* e) { return e ? to_stats(e->result.stats) : ebc_stats{}; }

ebc_status ebc_construct_extremal(uint64_t n, const ebc_budget* budget, uint64_t* out, size_t cap, size_t* count) {
    return guarded([&] {
        return copy_out(ebc::presentation_order(ebc::construct_extremal(n, to_budget(budget))), out, cap, count);
    });
}

ebc_status ebc_extract_witness(const ebc_davenport* d, const uint64_t* terms, size_t len, ebc_route* route,
                               uint64_t* out, size_t cap, size_t* count) {
    return guarded([&] {
        if (!d) return fail(EBC_ERR_ARGUMENT, "null handle");
        const auto x = ebc::extract_witness(to_sequence(d->result.n, terms, len), d->result);
        if (route) *route = x.route == ebc::ExtractionRoute::prime_power ? EBC_ROUTE_PRIME_POWER : EBC_ROUTE_SQUAREFREE;
        return copy_out(x.subsequence.terms(), out, cap, count);
    });
}

ebc_status ebc_verify_theorem(uint64_t n, const ebc_budget* budget, ebc_report** out) {
    return guarded([&] {
        if (!out) return fail(EBC_ERR_ARGUMENT, "out is null");
        *out = nullptr;
        auto h = std::make_unique<ebc_report>();
        h->report = ebc::verify_theorem(n, to_budget(budget));
        fill(h->davenport, h->report.davenport);
        fill(h->eb, h->report.eb);
        *out = h.release();
        return EBC_OK;
    });
}

void ebc_report_free(ebc_report* r) { delete r; }
uint64_t ebc_report_n(const ebc_report* r) { return r ? r->report.n : 0; }
const char* ebc_report_factorization(const ebc_report* r) { return r ? r->report.factorization.c_str() : ""; }

ebc_coverage ebc_report_coverage(const ebc_report* r) {
    if (!r) return EBC_COVERAGE_NONE;
    switch (r->report.coverage) {
        case ebc::Coverage::prime_power: return EBC_COVERAGE_PRIME_POWER;
        case ebc::Coverage::squarefree: return EBC_COVERAGE_SQUAREFREE;
        default: return EBC_COVERAGE_NONE;
    }
}

const ebc_davenport* ebc_report_davenport(const ebc_report* r) { return r ? &r->davenport : nullptr; }
const ebc_eb* ebc_report_eb(const ebc_report* r) { return r ? &r->eb : nullptr; }
int ebc_report_has_construction(const ebc_report* r) { return r && r->report.construction ? 1 : 0; }

ebc_status ebc_report_construction(const ebc_report* r, uint64_t* out, size_t cap, size_t* count) {
    if (!r) return fail(EBC_ERR_ARGUMENT, "null handle");
    return copy_out(r->report.construction ? *r->report.construction : std::vector<std::uint64_t>{}, out, cap, count);
}

int ebc_report_construction_free(const ebc_report* r) { return r && r->report.construction_free; }

int ebc_report_equality(const ebc_report* r) {
    if (!r || !r->report.equality) return -1;
    return *r->report.equality ? 1 : 0;
}

size_t ebc_report_violation_count(const ebc_report* r) { return r ? r->report.violations.size() : 0; }

const char* ebc_report_violation(const ebc_report* r, size_t i) {
    return r && i < r->report.violations.size() ? r->report.violations[i].c_str() : nullptr;
}

ebc_status ebc_scan_row_compute(uint64_t n, const ebc_budget* budget, ebc_scan_row** out) {
    return guarded([&] {
        if (!out) return fail(EBC_ERR_ARGUMENT, "out is null");
        if (n < 2) return fail(EBC_ERR_DOMAIN, "modulus must be at least 2");
        *out = nullptr;
        auto h = std::make_unique<ebc_scan_row>();
        h->row = ebc::scan_row(n, to_budget(budget));
        h->status = ebc::to_string(h->row.status);
        *out = h.release();
        return EBC_OK;
    });
}

void ebc_scan_row_free(ebc_scan_row* row) { delete row; }

ebc_status ebc_scan(uint64_t n_lo, uint64_t n_hi, const ebc_budget* budget, unsigned jobs,
                    ebc_scan_callback callback, void* user) {
    return guarded([&] {
        ebc::conjecture_scan(n_lo, n_hi, to_budget(budget), jobs, [&](const ebc::ScanRow& r) {
            if (!callback) return;
            ebc_scan_row h{r, std::string(ebc::to_string(r.status))};
            callback(&h, user);
        });
        return EBC_OK;
    });
}

uint64_t ebc_scan_row_n(const ebc_scan_row* row) { return row ? row->row.n : 0; }
const char* ebc_scan_row_factorization(const ebc_scan_row* row) { return row ? row->row.factorization.c_str() : ""; }
uint32_t ebc_scan_row_omega(const ebc_scan_row* row) { return row ? row->row.omega : 0; }
uint32_t ebc_scan_row_big_omega(const ebc_scan_row* row) { return row ? row->row.big_omega : 0; }

int ebc_scan_row_davenport(const ebc_scan_row* row, uint64_t* result) {
    if (!row || !row->row.davenport) return 0;
    if (result) *result = *row->row.davenport;
    return 1;
}

uint64_t ebc_scan_row_davenport_lower(const ebc_scan_row* row) { return row ? row->row.davenport_lower : 0; }
uint64_t ebc_scan_row_davenport_upper(const ebc_scan_row* row) { return row ? row->row.davenport_upper : 0; }

int ebc_scan_row_lower_bound(const ebc_scan_row* row, uint64_t* result) {
    if (!row || !row->row.lower_bound) return 0;
    if (result) *result = *row->row.lower_bound;
    return 1;
}

int ebc_scan_row_eb_value(const ebc_scan_row* row, uint64_t* result) {
    if (!row || !row->row.eb_value) return 0;
    if (result) *result = *row->row.eb_value;
    return 1;
}

uint64_t ebc_scan_row_eb_lower(const ebc_scan_row* row) { return row ? row->row.eb_lower : 0; }
uint64_t ebc_scan_row_eb_upper(const ebc_scan_row* row) { return row ? row->row.eb_upper : 0; }
int ebc_scan_row_eb_searched(const ebc_scan_row* row) { return row && row->row.eb_searched; }
const char* ebc_scan_row_status(const ebc_scan_row* row) { return row ? row->status.c_str() : ""; }

ebc_status ebc_scan_row_witness(const ebc_scan_row* row, uint64_t* out, size_t cap, size_t* count) {
    if (!row) return fail(EBC_ERR_ARGUMENT, "null handle");
    return copy_out(row->row.witness, out, cap, count);
}

ebc_status ebc_scan_row_davenport_witness(const ebc_scan_row* row, uint64_t* out, size_t cap, size_t* count) {
    if (!row) return fail(EBC_ERR_ARGUMENT, "null handle");
    return copy_out(row->row.davenport_witness, out, cap, count);
}

size_t ebc_scan_row_violation_count(const ebc_scan_row* row) { return row ? row->row.violations.size() : 0; }

const char* ebc_scan_row_violation(const ebc_scan_row* row, size_t i) {
    return row && i < row->row.violations.size() ? row->row.violations[i].c_str() : nullptr;
}

const char* ebc_scan_row_error(const ebc_scan_row* row) { return row ? row->row.error.c_str() : ""; }
ebc_stats ebc_scan_row_stats(const ebc_scan_row* row) { return row ? to_stats(row->row.stats) : ebc_stats{}; }

}  // extern "C"
