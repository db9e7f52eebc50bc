#ifndef EBC_EBC_H
#define EBC_EBC_H

/* C interface to the ebc library: idempotents of Z_n, the Davenport constant
 * of (Z/nZ)^x and the modular Erdos-Burgess constant I(S_{Z_n}).
 *
 * Conventions
 *   - Every function returns an ebc_status; EBC_OK is 0. On failure a message
 *     is available from ebc_last_error() on the calling thread.
 *   - Array outputs take (out, cap, count): *count always receives the number
 *     of elements available; when cap is too small nothing is written and the
 *     call returns EBC_ERR_BUFFER. out may be NULL when cap is 0.
 *   - Result objects are opaque, owned by the caller and released with the
 *     matching *_free function. Handles returned by accessors ("borrowed") stay
 *     valid as long as their parent.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EBC_BUILDING_LIBRARY)
#    define EBC_API __declspec(dllexport)
#  else
#    define EBC_API __declspec(dllimport)
#  endif
#else
#  define EBC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ebc_status {
    EBC_OK = 0,
    EBC_ERR_DOMAIN = 1,        /* argument outside the mathematical domain */
    EBC_ERR_PRECONDITION = 2,  /* e.g. sequence shorter than a threshold */
    EBC_ERR_UNDECIDED = 3,     /* needed a value the search could not decide */
    EBC_ERR_INCONSISTENT = 4,  /* a proved identity failed: library bug */
    EBC_ERR_PARSE = 5,         /* malformed sequence literal */
    EBC_ERR_BUFFER = 6,        /* output array too small */
    EBC_ERR_ARGUMENT = 7,      /* null handle or pointer */
    EBC_ERR_INTERNAL = 8
} ebc_status;

EBC_API const char* ebc_status_name(ebc_status s);
EBC_API const char* ebc_last_error(void);
EBC_API const char* ebc_version(void);

typedef struct ebc_budget {
    uint64_t max_states;            /* memoized search states */
    double max_seconds;             /* wall clock per search; 0 = unlimited */
    uint64_t uncapped_group_order;  /* searches this small ignore max_states */
} ebc_budget;

EBC_API void ebc_budget_default(ebc_budget* budget);

typedef struct ebc_stats {
    uint64_t nodes;
    uint64_t states;
    double seconds;
} ebc_stats;

/* ---- arithmetic ---- */

EBC_API ebc_status ebc_factorize(uint64_t n, uint64_t* primes, uint32_t* exponents, size_t cap, size_t* count);
EBC_API ebc_status ebc_omega(uint64_t n, uint32_t* omega, uint32_t* big_omega);
EBC_API ebc_status ebc_is_idempotent(uint64_t a, uint64_t n, int* result);
/* Ascending. */
EBC_API ebc_status ebc_idempotents(uint64_t n, uint64_t* out, size_t cap, size_t* count);
EBC_API ebc_status ebc_crt_combine(const uint64_t* residues, const uint64_t* moduli, size_t k, uint64_t* result);
/* n squarefree: the unit u with u = a mod p for p not dividing a, u = 1 otherwise. */
EBC_API ebc_status ebc_lift_to_unit(uint64_t a, uint64_t n, uint64_t* result);
EBC_API ebc_status ebc_units(uint64_t n, uint64_t* out, size_t cap, size_t* count);
/* Invariant factors d_1 | ... | d_s of (Z/nZ)^x. */
EBC_API ebc_status ebc_unit_group_shape(uint64_t n, uint64_t* out, size_t cap, size_t* count);
EBC_API ebc_status ebc_element_order(uint64_t a, uint64_t n, uint64_t* result);

/* ---- sequences (terms are residues < n, any order) ---- */

/* "5,7,2"; values >= n are rejected unless reduce != 0. Output is nondecreasing. */
EBC_API ebc_status ebc_parse_sequence(const char* literal, uint64_t n, int reduce, uint64_t* out, size_t cap,
                                      size_t* count);
EBC_API ebc_status ebc_pi(uint64_t n, const uint64_t* terms, size_t len, uint64_t* result);
/* Products of all nonempty subsequences, ascending. */
EBC_API ebc_status ebc_product_set(uint64_t n, const uint64_t* terms, size_t len, uint64_t* out, size_t cap,
                                   size_t* count);
EBC_API ebc_status ebc_is_idempotent_product_free(uint64_t n, const uint64_t* terms, size_t len, int* result);
EBC_API ebc_status ebc_is_product_one_free(uint64_t n, const uint64_t* terms, size_t len, int* result);
/* Running product sets grow strictly when the terms are absorbed in order. */
EBC_API ebc_status ebc_strict_growth_holds(uint64_t n, const uint64_t* terms, size_t len, int* result);
/* Units only. *found = 0 and *count = 0 when the sequence is product-one free. */
EBC_API ebc_status ebc_find_product_one_subsequence(uint64_t n, const uint64_t* terms, size_t len, int* found,
                                                    uint64_t* out, size_t cap, size_t* count);

/* ---- Davenport constant of (Z/nZ)^x ---- */

EBC_API ebc_status ebc_davenport_formula_bound(uint64_t n, uint64_t* result);

typedef struct ebc_davenport ebc_davenport;

/* budget may be NULL for the defaults. */
EBC_API ebc_status ebc_davenport_compute(uint64_t n, const ebc_budget* budget, ebc_davenport** out);
EBC_API void ebc_davenport_free(ebc_davenport* d);
EBC_API uint64_t ebc_davenport_n(const ebc_davenport* d);
EBC_API int ebc_davenport_decided(const ebc_davenport* d);
/* D when decided, otherwise the lower bound. */
EBC_API uint64_t ebc_davenport_value(const ebc_davenport* d);
EBC_API uint64_t ebc_davenport_lower(const ebc_davenport* d);
EBC_API uint64_t ebc_davenport_upper(const ebc_davenport* d);
EBC_API uint64_t ebc_davenport_formula(const ebc_davenport* d);
/* "exhaustive" or "formula-cross-checked". */
EBC_API const char* ebc_davenport_method(const ebc_davenport* d);
EBC_API ebc_status ebc_davenport_shape(const ebc_davenport* d, uint64_t* out, size_t cap, size_t* count);
/* Nondecreasing; product-one free, length lower - 1. */
EBC_API ebc_status ebc_davenport_witness(const ebc_davenport* d, uint64_t* out, size_t cap, size_t* count);
EBC_API int ebc_davenport_witness_lex_smallest(const ebc_davenport* d);
EBC_API ebc_stats ebc_davenport_stats(const ebc_davenport* d);

/* ---- Erdos-Burgess constant I(S_{Z_n}) ---- */

typedef struct ebc_eb ebc_eb;

EBC_API ebc_status ebc_eb_compute(uint64_t n, const ebc_budget* budget, ebc_eb** out);
EBC_API void ebc_eb_free(ebc_eb* e);
EBC_API uint64_t ebc_eb_n(const ebc_eb* e);
EBC_API int ebc_eb_decided(const ebc_eb* e);
EBC_API uint64_t ebc_eb_value(const ebc_eb* e);
EBC_API uint64_t ebc_eb_lower(const ebc_eb* e);
EBC_API uint64_t ebc_eb_upper(const ebc_eb* e);
/* D + Omega - omega; returns 0 (and leaves *result) when D is undecided. */
EBC_API int ebc_eb_lower_bound(const ebc_eb* e, uint64_t* result);
/* Units ascending, then non-units ascending; idempotent-product free. */
EBC_API ebc_status ebc_eb_witness(const ebc_eb* e, uint64_t* out, size_t cap, size_t* count);
EBC_API int ebc_eb_witness_lex_smallest(const ebc_eb* e);
/* Borrowed. */
EBC_API const ebc_davenport* ebc_eb_davenport(const ebc_eb* e);
EBC_API ebc_stats ebc_eb_stats(const ebc_eb* e);

/* The lower-bound construction V . prod p_i^[k_i - 1], in presentation order.
 * EBC_ERR_UNDECIDED when D cannot be decided within the budget. */
EBC_API ebc_status ebc_construct_extremal(uint64_t n, const ebc_budget* budget, uint64_t* out, size_t cap,
                                          size_t* count);

typedef enum ebc_route { EBC_ROUTE_PRIME_POWER = 1, EBC_ROUTE_SQUAREFREE = 2 } ebc_route;

/* Nonempty subsequence of terms with idempotent product mod n = ebc_davenport_n(d),
 * for n a prime power (len >= D + k - 1) or squarefree (len >= D). Needs d decided.
 * Nondecreasing. route may be NULL. */
EBC_API ebc_status ebc_extract_witness(const ebc_davenport* d, const uint64_t* terms, size_t len, ebc_route* route,
                                       uint64_t* out, size_t cap, size_t* count);

/* ---- theorem check ---- */

typedef enum ebc_coverage { EBC_COVERAGE_NONE = 0, EBC_COVERAGE_PRIME_POWER = 1, EBC_COVERAGE_SQUAREFREE = 2 } ebc_coverage;

typedef struct ebc_report ebc_report;

EBC_API ebc_status ebc_verify_theorem(uint64_t n, const ebc_budget* budget, ebc_report** out);
EBC_API void ebc_report_free(ebc_report* r);
EBC_API uint64_t ebc_report_n(const ebc_report* r);
EBC_API const char* ebc_report_factorization(const ebc_report* r);
EBC_API ebc_coverage ebc_report_coverage(const ebc_report* r);
EBC_API const ebc_davenport* ebc_report_davenport(const ebc_report* r);
EBC_API const ebc_eb* ebc_report_eb(const ebc_report* r);
/* 0 when D is undecided (no construction). */
EBC_API int ebc_report_has_construction(const ebc_report* r);
EBC_API ebc_status ebc_report_construction(const ebc_report* r, uint64_t* out, size_t cap, size_t* count);
EBC_API int ebc_report_construction_free(const ebc_report* r);
/* 1 equal, 0 unequal, -1 not applicable (I undecided or n not covered). */
EBC_API int ebc_report_equality(const ebc_report* r);
EBC_API size_t ebc_report_violation_count(const ebc_report* r);
EBC_API const char* ebc_report_violation(const ebc_report* r, size_t i);

/* ---- scan ---- */

typedef struct ebc_scan_row ebc_scan_row;

EBC_API ebc_status ebc_scan_row_compute(uint64_t n, const ebc_budget* budget, ebc_scan_row** out);
EBC_API void ebc_scan_row_free(ebc_scan_row* row);

/* Called once per n in ascending order; the row is only valid during the call. */
typedef void (*ebc_scan_callback)(const ebc_scan_row* row, void* user);

/* jobs = 0 means 1. */
EBC_API ebc_status ebc_scan(uint64_t n_lo, uint64_t n_hi, const ebc_budget* budget, unsigned jobs,
                            ebc_scan_callback callback, void* user);

EBC_API uint64_t ebc_scan_row_n(const ebc_scan_row* row);
EBC_API const char* ebc_scan_row_factorization(const ebc_scan_row* row);
EBC_API uint32_t ebc_scan_row_omega(const ebc_scan_row* row);
EBC_API uint32_t ebc_scan_row_big_omega(const ebc_scan_row* row);
/* Optional values: return 1 and store when present. */
EBC_API int ebc_scan_row_davenport(const ebc_scan_row* row, uint64_t* result);
EBC_API uint64_t ebc_scan_row_davenport_lower(const ebc_scan_row* row);
EBC_API uint64_t ebc_scan_row_davenport_upper(const ebc_scan_row* row);
EBC_API int ebc_scan_row_lower_bound(const ebc_scan_row* row, uint64_t* result);
EBC_API int ebc_scan_row_eb_value(const ebc_scan_row* row, uint64_t* result);
EBC_API uint64_t ebc_scan_row_eb_lower(const ebc_scan_row* row);
EBC_API uint64_t ebc_scan_row_eb_upper(const ebc_scan_row* row);
EBC_API int ebc_scan_row_eb_searched(const ebc_scan_row* row);
/* THEOREM_PRIME_POWER, THEOREM_SQUAREFREE, CONJECTURE_VERIFIED, COUNTEREXAMPLE or UNDECIDED. */
EBC_API const char* ebc_scan_row_status(const ebc_scan_row* row);
EBC_API ebc_status ebc_scan_row_witness(const ebc_scan_row* row, uint64_t* out, size_t cap, size_t* count);
EBC_API ebc_status ebc_scan_row_davenport_witness(const ebc_scan_row* row, uint64_t* out, size_t cap, size_t* count);
EBC_API size_t ebc_scan_row_violation_count(const ebc_scan_row* row);
EBC_API const char* ebc_scan_row_violation(const ebc_scan_row* row, size_t i);
/* Empty string unless the row failed with an error. */
EBC_API const char* ebc_scan_row_error(const ebc_scan_row* row);
EBC_API ebc_stats ebc_scan_row_stats(const ebc_scan_row* row);

#ifdef __cplusplus
}
#endif

#endif
