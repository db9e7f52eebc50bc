#include "ebc/ebc.h"

#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

namespace {

using V = std::vector<std::uint64_t>;

V get(ebc_status (*fn)(std::uint64_t, std::uint64_t*, std::size_t, std::size_t*), std::uint64_t n) {
    std::size_t count = 0;
    const ebc_status probe = fn(n, nullptr, 0, &count);
    REQUIRE(probe == (count ? EBC_ERR_BUFFER : EBC_OK));
    V out(count);
    REQUIRE(fn(n, out.data(), out.size(), &count) == EBC_OK);
    return out;
}

}  // namespace

TEST_CASE("status names and defaults") {
    CHECK(std::string(ebc_status_name(EBC_OK)) == "ok");
    CHECK(std::string(ebc_status_name(EBC_ERR_UNDECIDED)) == "undecided at budget");
    ebc_budget b;
    ebc_budget_default(&b);
    CHECK(b.max_states == (std::uint64_t{1} << 26));
    CHECK(b.max_seconds == 0.0);
    CHECK(b.uncapped_group_order == 24);
    CHECK(std::strlen(ebc_version()) > 0);
}

TEST_CASE("buffer protocol") {
    CHECK(get(ebc_idempotents, 12) == V{0, 1, 4, 9});
    CHECK(get(ebc_units, 12) == V{1, 5, 7, 11});
    CHECK(get(ebc_unit_group_shape, 15) == V{2, 4});
    CHECK(get(ebc_unit_group_shape, 2).empty());

    std::uint64_t small[2];
    std::size_t count = 0;
    CHECK(ebc_idempotents(30, small, 2, &count) == EBC_ERR_BUFFER);
    CHECK(count == 8);
    CHECK(std::string(ebc_last_error()).find("need 8") != std::string::npos);
    CHECK(ebc_idempotents(30, small, 2, nullptr) == EBC_ERR_ARGUMENT);
}

TEST_CASE("arithmetic entry points") {
    std::uint64_t primes[8];
    std::uint32_t exps[8];
    std::size_t count = 0;
    REQUIRE(ebc_factorize(360, primes, exps, 8, &count) == EBC_OK);
    CHECK(count == 3);
    CHECK(primes[0] == 2);
    CHECK(exps[0] == 3);
    CHECK(ebc_factorize(1, primes, exps, 8, &count) == EBC_ERR_DOMAIN);
    CHECK(std::string(ebc_last_error()).size() > 0);

    std::uint32_t w = 0, W = 0;
    CHECK(ebc_omega(360, &w, &W) == EBC_OK);
    CHECK(w == 3);
    CHECK(W == 6);

    int r = 0;
    CHECK(ebc_is_idempotent(4, 12, &r) == EBC_OK);
    CHECK(r == 1);
    CHECK(ebc_is_idempotent(4, 12, nullptr) == EBC_ERR_ARGUMENT);

    const std::uint64_t res[] = {1, 0}, mods[] = {4, 9};
    std::uint64_t x = 0;
    CHECK(ebc_crt_combine(res, mods, 2, &x) == EBC_OK);
    CHECK(x == 9);
    const std::uint64_t bad[] = {4, 6};
    CHECK(ebc_crt_combine(res, bad, 2, &x) == EBC_ERR_DOMAIN);

    CHECK(ebc_lift_to_unit(3, 15, &x) == EBC_OK);
    CHECK(x == 13);
    CHECK(ebc_lift_to_unit(3, 12, &x) == EBC_ERR_DOMAIN);
    CHECK(ebc_element_order(2, 5, &x) == EBC_OK);
    CHECK(x == 4);
    CHECK(ebc_element_order(2, 4, &x) == EBC_ERR_DOMAIN);
}

TEST_CASE("sequence entry points") {
    std::uint64_t out[16];
    std::size_t count = 0;
    CHECK(ebc_parse_sequence("5,7,2", 12, 0, out, 16, &count) == EBC_OK);
    CHECK(V(out, out + count) == V{2, 5, 7});
    CHECK(ebc_parse_sequence("5,12", 12, 0, out, 16, &count) == EBC_ERR_PARSE);
    CHECK(ebc_parse_sequence("5,12", 12, 1, out, 16, &count) == EBC_OK);
    CHECK(ebc_parse_sequence(nullptr, 12, 0, out, 16, &count) == EBC_ERR_ARGUMENT);

    const std::uint64_t t[] = {5, 7, 2};
    CHECK(ebc_product_set(12, t, 3, out, 16, &count) == EBC_OK);
    CHECK(V(out, out + count) == V{2, 5, 7, 10, 11});
    std::uint64_t p = 0;
    CHECK(ebc_pi(12, t, 3, &p) == EBC_OK);
    CHECK(p == 10);
    CHECK(ebc_pi(12, t, 0, &p) == EBC_ERR_DOMAIN);
    const std::uint64_t out_of_range[] = {13};
    CHECK(ebc_pi(12, out_of_range, 1, &p) == EBC_ERR_DOMAIN);
    CHECK(ebc_pi(12, nullptr, 1, &p) == EBC_ERR_ARGUMENT);

    int r = 0;
    CHECK(ebc_is_idempotent_product_free(12, t, 3, &r) == EBC_OK);
    CHECK(r == 1);
    CHECK(ebc_strict_growth_holds(12, t, 3, &r) == EBC_OK);
    CHECK(r == 1);
    const std::uint64_t fives[] = {5, 5};
    CHECK(ebc_is_product_one_free(6, fives, 2, &r) == EBC_OK);
    CHECK(r == 0);
    int found = 0;
    CHECK(ebc_find_product_one_subsequence(6, fives, 2, &found, out, 16, &count) == EBC_OK);
    CHECK(found == 1);
    CHECK(V(out, out + count) == V{5, 5});
    const std::uint64_t twos[] = {2, 2, 2};
    CHECK(ebc_find_product_one_subsequence(5, twos, 3, &found, out, 16, &count) == EBC_OK);
    CHECK(found == 0);
    CHECK(count == 0);
    const std::uint64_t two[] = {2};
    CHECK(ebc_find_product_one_subsequence(6, two, 1, &found, out, 16, &count) == EBC_ERR_DOMAIN);
}

TEST_CASE("davenport handle") {
    ebc_davenport* d = nullptr;
    REQUIRE(ebc_davenport_compute(12, nullptr, &d) == EBC_OK);
    CHECK(ebc_davenport_n(d) == 12);
    CHECK(ebc_davenport_decided(d) == 1);
    CHECK(ebc_davenport_value(d) == 3);
    CHECK(ebc_davenport_formula(d) == 3);
    std::uint64_t w[8];
    std::size_t count = 0;
    CHECK(ebc_davenport_witness(d, w, 8, &count) == EBC_OK);
    CHECK(V(w, w + count) == V{5, 7});
    CHECK(ebc_davenport_witness_lex_smallest(d) == 1);
    CHECK(ebc_davenport_shape(d, w, 8, &count) == EBC_OK);
    CHECK(V(w, w + count) == V{2, 2});
    CHECK(std::string(ebc_davenport_method(d)).size() > 0);
    ebc_davenport_free(d);

    CHECK(ebc_davenport_compute(1, nullptr, &d) == EBC_ERR_DOMAIN);
    CHECK(d == nullptr);
    CHECK(ebc_davenport_compute(12, nullptr, nullptr) == EBC_ERR_ARGUMENT);
    CHECK(ebc_davenport_value(nullptr) == 0);
    CHECK(ebc_davenport_witness(nullptr, w, 8, &count) == EBC_ERR_ARGUMENT);
    ebc_davenport_free(nullptr);

    ebc_budget tight;
    ebc_budget_default(&tight);
    tight.max_states = 10;
    tight.uncapped_group_order = 0;
    REQUIRE(ebc_davenport_compute(63, &tight, &d) == EBC_OK);
    CHECK(ebc_davenport_decided(d) == 0);
    CHECK(ebc_davenport_lower(d) <= ebc_davenport_upper(d));
    ebc_davenport_free(d);
}

TEST_CASE("eb handle and construction") {
    ebc_eb* e = nullptr;
    REQUIRE(ebc_eb_compute(4, nullptr, &e) == EBC_OK);
    CHECK(ebc_eb_decided(e) == 1);
    CHECK(ebc_eb_value(e) == 3);
    std::uint64_t lb = 0;
    CHECK(ebc_eb_lower_bound(e, &lb) == 1);
    CHECK(lb == 3);
    std::uint64_t w[8];
    std::size_t count = 0;
    CHECK(ebc_eb_witness(e, w, 8, &count) == EBC_OK);
    CHECK(V(w, w + count) == V{3, 2});
    CHECK(ebc_davenport_value(ebc_eb_davenport(e)) == 2);
    ebc_eb_free(e);

    CHECK(ebc_construct_extremal(8, nullptr, w, 8, &count) == EBC_OK);
    CHECK(V(w, w + count) == V{3, 5, 2, 2});
    ebc_budget tight;
    ebc_budget_default(&tight);
    tight.max_states = 10;
    tight.uncapped_group_order = 0;
    CHECK(ebc_construct_extremal(63, &tight, w, 8, &count) == EBC_ERR_UNDECIDED);
}

TEST_CASE("extraction") {
    ebc_davenport* d = nullptr;
    REQUIRE(ebc_davenport_compute(4, nullptr, &d) == EBC_OK);
    const std::uint64_t t[] = {2, 2, 3};
    std::uint64_t w[8];
    std::size_t count = 0;
    ebc_route route{};
    CHECK(ebc_extract_witness(d, t, 3, &route, w, 8, &count) == EBC_OK);
    CHECK(route == EBC_ROUTE_PRIME_POWER);
    CHECK(V(w, w + count) == V{2, 2});
    CHECK(ebc_extract_witness(d, t, 2, &route, w, 8, &count) == EBC_ERR_PRECONDITION);
    ebc_davenport_free(d);

    REQUIRE(ebc_davenport_compute(12, nullptr, &d) == EBC_OK);
    const std::uint64_t u[] = {5, 7, 11};
    CHECK(ebc_extract_witness(d, u, 3, nullptr, w, 8, &count) == EBC_ERR_DOMAIN);
    ebc_davenport_free(d);
    CHECK(ebc_extract_witness(nullptr, u, 3, nullptr, w, 8, &count) == EBC_ERR_ARGUMENT);
}

TEST_CASE("report handle") {
    ebc_report* r = nullptr;
    REQUIRE(ebc_verify_theorem(12, nullptr, &r) == EBC_OK);
    CHECK(ebc_report_n(r) == 12);
    CHECK(std::string(ebc_report_factorization(r)) == "2^2*3");
    CHECK(ebc_report_coverage(r) == EBC_COVERAGE_NONE);
    CHECK(ebc_report_has_construction(r) == 1);
    CHECK(ebc_report_construction_free(r) == 1);
    CHECK(ebc_report_equality(r) == 1);
    CHECK(ebc_report_violation_count(r) == 0);
    CHECK(ebc_report_violation(r, 0) == nullptr);
    CHECK(ebc_eb_value(ebc_report_eb(r)) == 4);
    ebc_report_free(r);
}

namespace {

struct Collected {
    std::vector<std::uint64_t> n;
    std::vector<std::string> status;
};

void collect(const ebc_scan_row* row, void* user) {
    auto* c = static_cast<Collected*>(user);
    c->n.push_back(ebc_scan_row_n(row));
    c->status.push_back(ebc_scan_row_status(row));
}

}  // namespace

TEST_CASE("scan callback") {
    Collected c;
    REQUIRE(ebc_scan(2, 20, nullptr, 3, collect, &c) == EBC_OK);
    REQUIRE(c.n.size() == 19);
    for (std::size_t i = 0; i < c.n.size(); ++i) CHECK(c.n[i] == i + 2);
    CHECK(c.status[10] == "CONJECTURE_VERIFIED");  // n = 12
    CHECK(ebc_scan(5, 2, nullptr, 1, collect, &c) == EBC_ERR_DOMAIN);

    ebc_scan_row* row = nullptr;
    REQUIRE(ebc_scan_row_compute(18, nullptr, &row) == EBC_OK);
    std::uint64_t v = 0;
    CHECK(ebc_scan_row_davenport(row, &v) == 1);
    CHECK(v == 6);
    std::uint64_t lower_bound = 0;
    CHECK(ebc_scan_row_lower_bound(row, &lower_bound) == 1);
    CHECK(lower_bound == 7);
    CHECK(ebc_scan_row_eb_value(row, &v) == 1);
    CHECK(ebc_scan_row_omega(row) == 2);
    CHECK(ebc_scan_row_big_omega(row) == 3);
    CHECK(std::string(ebc_scan_row_error(row)).empty());
    std::uint64_t w[32];
    std::size_t count = 0;
    CHECK(ebc_scan_row_witness(row, w, 32, &count) == EBC_OK);
    CHECK(count + 1 == v);
    ebc_scan_row_free(row);
    CHECK(ebc_scan_row_compute(1, nullptr, &row) == EBC_ERR_DOMAIN);
}
