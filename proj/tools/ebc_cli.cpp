// Command-line front end. Talks to the library only through the C API.

#include "ebc/ebc.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using Terms = std::vector<std::uint64_t>;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitDomain = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitInconsistent = 4;

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(ebc_status s) {
    switch (s) {
        case EBC_ERR_DOMAIN:
        case EBC_ERR_PRECONDITION:
        case EBC_ERR_PARSE: return kExitDomain;
        case EBC_ERR_UNDECIDED: return kExitUndecided;
        case EBC_ERR_INCONSISTENT: return kExitInconsistent;
        default: return kExitInternal;
    }
}

void ok(ebc_status s) {
    if (s != EBC_OK) throw Failure{exit_code_for(s), std::string(ebc_status_name(s)) + ": " + ebc_last_error()};
}

// Array getter through the (out, cap, count) convention; guess avoids a second
// call for the expensive ones.
template <class Fn>
Terms fetch(Fn&& fn, std::size_t guess = 64) {
    Terms out(guess);
    std::size_t count = 0;
    ebc_status s = fn(out.data(), out.size(), &count);
    if (s == EBC_ERR_BUFFER) {
        out.resize(count);
        s = fn(out.data(), out.size(), &count);
    }
    ok(s);
    out.resize(count);
    return out;
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Davenport = std::unique_ptr<ebc_davenport, Deleter<ebc_davenport, ebc_davenport_free>>;
using EB = std::unique_ptr<ebc_eb, Deleter<ebc_eb, ebc_eb_free>>;
using Report = std::unique_ptr<ebc_report, Deleter<ebc_report, ebc_report_free>>;

enum class Format { human, json, csv };

struct Options {
    std::string format = "human";
    bool witness = false;
    bool check = false;
    bool strict = false;
    bool reduce = false;
    bool stream = false;
    ebc_budget budget{};
    std::uint64_t n = 0;
    std::string seq;
    std::uint64_t from = 2;
    std::uint64_t to = 40;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100;

    Format fmt() const { return format == "json" ? Format::json : format == "csv" ? Format::csv : Format::human; }
};

// Status coloring for human output on a terminal; NO_COLOR turns it off.
struct Style {
    bool on = false;

    std::string status(const std::string& s) const {
        if (!on) return s;
        const char* code = "0";
        if (s.rfind("THEOREM", 0) == 0 || s == "CONJECTURE_VERIFIED" || s == "exact" || s == "ok") code = "32";
        else if (s == "UNDECIDED" || s == "undecided") code = "33";
        else if (s == "COUNTEREXAMPLE" || s == "violations") code = "31";
        return "\033[" + std::string(code) + "m" + s + "\033[0m";
    }
};

Style style;

std::string literal(const Terms& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(t[i]);
    }
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    return line;
}

std::string opt_str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : ""; }

json opt_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

std::string shape_string(const Terms& shape) {
    if (shape.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? " x C" : "C") + std::to_string(shape[i]);
    return s;
}

std::string factorization_string(std::uint64_t n) {
    std::uint64_t primes[64];
    std::uint32_t exps[64];
    std::size_t count = 0;
    ok(ebc_factorize(n, primes, exps, 64, &count));
    std::string s;
    for (std::size_t i = 0; i < count; ++i) {
        if (i) s += '*';
        s += std::to_string(primes[i]);
        if (exps[i] > 1) s += '^' + std::to_string(exps[i]);
    }
    return s;
}

json budget_json(const ebc_budget& b) {
    return {{"max_states", b.max_states}, {"max_seconds", b.max_seconds}};
}

json stats_json(const ebc_stats& s) { return {{"nodes", s.nodes}, {"states", s.states}, {"seconds", s.seconds}}; }

void emit_json(const json& j) { std::cout << j.dump() << '\n'; }

// ---- --check: re-ingest emitted witnesses through the library ----

void check_failed(const std::string& what) { throw Failure{kExitInconsistent, "check failed: " + what}; }

Terms reparse(const Terms& t, std::uint64_t n) {
    Terms parsed = fetch([&](auto* o, auto c, auto* k) { return ebc_parse_sequence(literal(t).c_str(), n, 0, o, c, k); },
                         t.size() + 1);
    Terms sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (parsed != sorted) check_failed("witness does not round-trip through the sequence parser");
    return parsed;
}

bool query(ebc_status (*fn)(uint64_t, const uint64_t*, size_t, int*), std::uint64_t n, const Terms& t) {
    int r = 0;
    ok(fn(n, t.data(), t.size(), &r));
    return r != 0;
}

void check_free_witness(std::uint64_t n, const Terms& w, std::uint64_t expected_length) {
    reparse(w, n);
    if (w.size() != expected_length) check_failed("witness length " + std::to_string(w.size()) + ", expected " +
                                                  std::to_string(expected_length));
    if (!query(ebc_is_idempotent_product_free, n, w)) check_failed("witness has an idempotent subsequence product");
    if (!query(ebc_strict_growth_holds, n, w)) check_failed("product sets do not grow strictly along the witness");
}

void check_davenport_witness(std::uint64_t n, const Terms& w, std::uint64_t expected_length) {
    reparse(w, n);
    if (w.size() != expected_length) check_failed("Davenport witness has the wrong length");
    const Terms u = fetch([&](auto* o, auto c, auto* k) { return ebc_units(n, o, c, k); }, n);
    for (auto a : w)
        if (!std::binary_search(u.begin(), u.end(), a)) check_failed(std::to_string(a) + " is not a unit");
    if (!query(ebc_is_product_one_free, n, w)) check_failed("Davenport witness has a product-one subsequence");
    if (!query(ebc_strict_growth_holds, n, w)) check_failed("product sets do not grow strictly along the witness");
}

// ---- commands ----

int cmd_idempotents(const Options& o) {
    const Terms e = fetch([&](auto* out, auto cap, auto* count) { return ebc_idempotents(o.n, out, cap, count); });
    std::uint32_t omega = 0, big_omega = 0;
    ok(ebc_omega(o.n, &omega, &big_omega));
    if (o.check) {
        if (e.size() != (std::uint64_t{1} << omega)) check_failed("idempotent count differs from 2^omega");
        for (auto a : e) {
            int r = 0;
            ok(ebc_is_idempotent(a, o.n, &r));
            if (!r) check_failed(std::to_string(a) + " is not idempotent");
        }
    }
    switch (o.fmt()) {
        case Format::json:
            emit_json({{"command", "idempotents"}, {"n", o.n}, {"omega", omega}, {"count", e.size()}, {"members", e}});
            break;
        case Format::csv:
            std::cout << "n,omega,count,members\n"
                      << csv_line({std::to_string(o.n), std::to_string(omega), std::to_string(e.size()), literal(e)})
                      << '\n';
            break;
        case Format::human:
            std::cout << "n = " << o.n << " (" << factorization_string(o.n) << "), omega = " << omega << '\n'
                      << "idempotents (" << e.size() << "): " << literal(e) << '\n';
            break;
    }
    return kExitOk;
}

int cmd_davenport(const Options& o) {
    ebc_davenport* raw = nullptr;
    ok(ebc_davenport_compute(o.n, &o.budget, &raw));
    Davenport d(raw);
    const bool decided = ebc_davenport_decided(d.get());
    const Terms shape = fetch([&](auto* out, auto cap, auto* count) { return ebc_davenport_shape(d.get(), out, cap, count); });
    const Terms w = fetch([&](auto* out, auto cap, auto* count) { return ebc_davenport_witness(d.get(), out, cap, count); });
    const std::string status = decided ? "exact" : "undecided";
    const std::optional<std::uint64_t> value =
        decided ? std::optional<std::uint64_t>(ebc_davenport_value(d.get())) : std::nullopt;
    if (o.check) check_davenport_witness(o.n, w, ebc_davenport_lower(d.get()) - 1);
    const ebc_stats stats = ebc_davenport_stats(d.get());

    switch (o.fmt()) {
        case Format::json: {
            json j = {{"command", "davenport"},
                      {"n", o.n},
                      {"shape", shape},
                      {"davenport", opt_json(value)},
                      {"lower", ebc_davenport_lower(d.get())},
                      {"upper", ebc_davenport_upper(d.get())},
                      {"formula_bound", ebc_davenport_formula(d.get())},
                      {"method", ebc_davenport_method(d.get())},
                      {"status", status}};
            if (o.witness) {
                j["witness"] = w;
                j["witness_lex_smallest"] = ebc_davenport_witness_lex_smallest(d.get()) != 0;
            }
            j["stats"] = stats_json(stats);
            j["budget"] = budget_json(o.budget);
            emit_json(j);
            break;
        }
        case Format::csv: {
            std::vector<std::string> header = {"n", "davenport", "lower", "upper", "formula_bound", "method", "status"};
            std::vector<std::string> row = {std::to_string(o.n),
                                            opt_str(value),
                                            std::to_string(ebc_davenport_lower(d.get())),
                                            std::to_string(ebc_davenport_upper(d.get())),
                                            std::to_string(ebc_davenport_formula(d.get())),
                                            ebc_davenport_method(d.get()),
                                            status};
            if (o.witness) {
                header.push_back("witness");
                row.push_back(literal(w));
            }
            std::cout << csv_line(header) << '\n' << csv_line(row) << '\n';
            break;
        }
        case Format::human:
            std::cout << "n = " << o.n << ", (Z/nZ)^x = " << shape_string(shape) << '\n';
            if (decided)
                std::cout << "D = " << *value << "  (" << style.status(status) << ", " << ebc_davenport_method(d.get())
                          << ")\n";
            else
                std::cout << "D in [" << ebc_davenport_lower(d.get()) << ", " << ebc_davenport_upper(d.get()) << "]  ("
                          << style.status(status) << " at budget)\n";
            std::cout << "formula bound 1 + sum(d_i - 1) = " << ebc_davenport_formula(d.get()) << '\n';
            if (o.witness) std::cout << "witness: " << literal(w) << '\n';
            std::cout << "search: " << stats.states << " states, " << stats.nodes << " nodes, " << stats.seconds
                      << " s\n";
            break;
    }
    return !decided && o.strict ? kExitUndecided : kExitOk;
}

int cmd_eb(const Options& o) {
    ebc_eb* raw = nullptr;
    ok(ebc_eb_compute(o.n, &o.budget, &raw));
    EB e(raw);
    const ebc_davenport* d = ebc_eb_davenport(e.get());
    const bool decided = ebc_eb_decided(e.get());
    std::uint32_t omega = 0, big_omega = 0;
    ok(ebc_omega(o.n, &omega, &big_omega));
    std::uint64_t lb = 0;
    const std::optional<std::uint64_t> lower_bound =
        ebc_eb_lower_bound(e.get(), &lb) ? std::optional<std::uint64_t>(lb) : std::nullopt;
    const std::optional<std::uint64_t> dv =
        ebc_davenport_decided(d) ? std::optional<std::uint64_t>(ebc_davenport_value(d)) : std::nullopt;
    const std::optional<std::uint64_t> value =
        decided ? std::optional<std::uint64_t>(ebc_eb_value(e.get())) : std::nullopt;
    const Terms w = fetch([&](auto* out, auto cap, auto* count) { return ebc_eb_witness(e.get(), out, cap, count); });
    const std::string status = decided ? "exact" : "undecided";
    if (o.check) check_free_witness(o.n, w, ebc_eb_lower(e.get()) - 1);
    const ebc_stats stats = ebc_eb_stats(e.get());

    switch (o.fmt()) {
        case Format::json: {
            json j = {{"command", "eb"},
                      {"n", o.n},
                      {"factorization", factorization_string(o.n)},
                      {"omega", omega},
                      {"big_omega", big_omega},
                      {"davenport", opt_json(dv)},
                      {"lower_bound", opt_json(lower_bound)},
                      {"eb_value", opt_json(value)},
                      {"eb_lower", ebc_eb_lower(e.get())},
                      {"eb_upper", ebc_eb_upper(e.get())},
                      {"status", status}};
            if (o.witness) {
                j["witness"] = w;
                j["witness_lex_smallest"] = ebc_eb_witness_lex_smallest(e.get()) != 0;
            }
            j["stats"] = stats_json(stats);
            j["budget"] = budget_json(o.budget);
            emit_json(j);
            break;
        }
        case Format::csv: {
            std::vector<std::string> header = {"n", "omega", "big_omega", "davenport", "lower_bound", "eb_value",
                                               "eb_lower", "eb_upper", "status"};
            std::vector<std::string> row = {std::to_string(o.n),
                                            std::to_string(omega),
                                            std::to_string(big_omega),
                                            opt_str(dv),
                                            opt_str(lower_bound),
                                            opt_str(value),
                                            std::to_string(ebc_eb_lower(e.get())),
                                            std::to_string(ebc_eb_upper(e.get())),
                                            status};
            if (o.witness) {
                header.push_back("witness");
                row.push_back(literal(w));
            }
            std::cout << csv_line(header) << '\n' << csv_line(row) << '\n';
            break;
        }
        case Format::human:
            std::cout << "n = " << o.n << " (" << factorization_string(o.n) << "), omega = " << omega
                      << ", Omega = " << big_omega << '\n';
            if (decided)
                std::cout << "I = " << *value << "  (" << style.status(status) << ")\n";
            else
                std::cout << "I in [" << ebc_eb_lower(e.get()) << ", " << ebc_eb_upper(e.get()) << "]  ("
                          << style.status(status) << " at budget)\n";
            if (dv)
                std::cout << "D = " << *dv << ", lower bound D + Omega - omega = " << *lower_bound << '\n';
            else
                std::cout << "D in [" << ebc_davenport_lower(d) << ", " << ebc_davenport_upper(d) << "] (undecided)\n";
            if (o.witness) std::cout << "witness: " << literal(w) << '\n';
            std::cout << "search: " << stats.states << " states, " << stats.nodes << " nodes, " << stats.seconds
                      << " s\n";
            break;
    }
    return !decided && o.strict ? kExitUndecided : kExitOk;
}

int cmd_construct(const Options& o) {
    Terms w;
    std::string status = "exact";
    const ebc_status s = [&] {
        std::size_t count = 0;
        w.resize(o.n);
        const ebc_status r = ebc_construct_extremal(o.n, &o.budget, w.data(), w.size(), &count);
        w.resize(r == EBC_OK ? count : 0);
        return r;
    }();
    if (s == EBC_ERR_UNDECIDED) status = "undecided";
    else ok(s);
    std::uint32_t omega = 0, big_omega = 0;
    ok(ebc_omega(o.n, &omega, &big_omega));
    const bool decided = status == "exact";
    const std::optional<std::uint64_t> length = decided ? std::optional<std::uint64_t>(w.size()) : std::nullopt;
    const std::optional<std::uint64_t> lower_bound = length ? std::optional<std::uint64_t>(*length + 1) : std::nullopt;
    const std::optional<std::uint64_t> dv =
        lower_bound ? std::optional<std::uint64_t>(*lower_bound - big_omega + omega) : std::nullopt;
    bool free = false;
    if (decided) {
        free = query(ebc_is_idempotent_product_free, o.n, w);
        if (!free) throw Failure{kExitInconsistent, "construction is not idempotent-product free"};
        if (o.check) check_free_witness(o.n, w, w.size());
    }

    switch (o.fmt()) {
        case Format::json:
            emit_json({{"command", "construct"},
                       {"n", o.n},
                       {"omega", omega},
                       {"big_omega", big_omega},
                       {"davenport", opt_json(dv)},
                       {"lower_bound", opt_json(lower_bound)},
                       {"length", opt_json(length)},
                       {"free", free},
                       {"status", status},
                       {"witness", decided ? json(w) : json(nullptr)},
                       {"budget", budget_json(o.budget)}});
            break;
        case Format::csv:
            std::cout << "n,omega,big_omega,davenport,lower_bound,length,free,status,witness\n"
                      << csv_line({std::to_string(o.n), std::to_string(omega), std::to_string(big_omega), opt_str(dv),
                                   opt_str(lower_bound), opt_str(length), free ? "true" : "false", status, literal(w)})
                      << '\n';
            break;
        case Format::human:
            if (!decided) {
                std::cout << "n = " << o.n << ": D is " << style.status("undecided")
                          << " at budget; no construction\n";
                break;
            }
            std::cout << "n = " << o.n << " (" << factorization_string(o.n) << "), D = " << *dv
                      << ", lower bound = " << *lower_bound << '\n'
                      << "construction (length " << *length << ", idempotent-product free): " << literal(w) << '\n';
            break;
    }
    return !decided && o.strict ? kExitUndecided : kExitOk;
}

int cmd_extract(const Options& o) {
    const Terms t = fetch(
        [&](auto* out, auto cap, auto* count) {
            return ebc_parse_sequence(o.seq.c_str(), o.n, o.reduce ? 1 : 0, out, cap, count);
        },
        o.seq.size() + 1);
    ebc_davenport* raw = nullptr;
    ok(ebc_davenport_compute(o.n, &o.budget, &raw));
    Davenport d(raw);
    if (!ebc_davenport_decided(d.get())) {
        const std::string msg = "D(" + std::to_string(o.n) + ") is undecided at budget; cannot extract";
        if (o.fmt() == Format::json)
            emit_json({{"command", "extract"}, {"n", o.n}, {"terms", t}, {"status", "undecided"}});
        else
            std::cout << msg << '\n';
        return o.strict ? kExitUndecided : kExitOk;
    }
    ebc_route route{};
    const Terms w = fetch([&](auto* out, auto cap, auto* count) {
        return ebc_extract_witness(d.get(), t.data(), t.size(), &route, out, cap, count);
    }, t.size() + 1);
    std::uint64_t product = 0;
    ok(ebc_pi(o.n, w.data(), w.size(), &product));
    int idem = 0;
    ok(ebc_is_idempotent(product, o.n, &idem));
    if (!idem) throw Failure{kExitInconsistent, "extracted subsequence product is not idempotent"};
    if (o.check) {
        reparse(w, o.n);
        Terms rest = t;
        for (auto a : w) {
            auto it = std::find(rest.begin(), rest.end(), a);
            if (it == rest.end()) check_failed("extracted terms are not a subsequence of the input");
            rest.erase(it);
        }
    }
    const std::string route_name = route == EBC_ROUTE_PRIME_POWER ? "prime_power" : "squarefree";

    switch (o.fmt()) {
        case Format::json:
            emit_json({{"command", "extract"},
                       {"n", o.n},
                       {"terms", t},
                       {"davenport", ebc_davenport_value(d.get())},
                       {"route", route_name},
                       {"witness", w},
                       {"product", product},
                       {"idempotent", true},
                       {"status", "exact"}});
            break;
        case Format::csv:
            std::cout << "n,terms,davenport,route,witness,product\n"
                      << csv_line({std::to_string(o.n), literal(t), std::to_string(ebc_davenport_value(d.get())),
                                   route_name, literal(w), std::to_string(product)})
                      << '\n';
            break;
        case Format::human:
            std::cout << "n = " << o.n << " (" << factorization_string(o.n) << "), |T| = " << t.size()
                      << ", D = " << ebc_davenport_value(d.get()) << ", route " << route_name << '\n'
                      << "subsequence: " << literal(w) << "  product " << product << " (idempotent)\n";
            break;
    }
    return kExitOk;
}

int cmd_verify(const Options& o) {
    ebc_report* raw = nullptr;
    ok(ebc_verify_theorem(o.n, &o.budget, &raw));
    Report r(raw);
    const ebc_davenport* d = ebc_report_davenport(r.get());
    const ebc_eb* e = ebc_report_eb(r.get());
    std::uint32_t omega = 0, big_omega = 0;
    ok(ebc_omega(o.n, &omega, &big_omega));
    const char* coverage_names[] = {"none", "prime_power", "squarefree"};
    const std::string coverage = coverage_names[ebc_report_coverage(r.get())];
    const std::optional<std::uint64_t> dv =
        ebc_davenport_decided(d) ? std::optional<std::uint64_t>(ebc_davenport_value(d)) : std::nullopt;
    std::uint64_t lb = 0;
    const std::optional<std::uint64_t> lower_bound =
        ebc_eb_lower_bound(e, &lb) ? std::optional<std::uint64_t>(lb) : std::nullopt;
    const std::optional<std::uint64_t> iv =
        ebc_eb_decided(e) ? std::optional<std::uint64_t>(ebc_eb_value(e)) : std::nullopt;
    const Terms construction =
        fetch([&](auto* out, auto cap, auto* count) { return ebc_report_construction(r.get(), out, cap, count); });
    const Terms w = fetch([&](auto* out, auto cap, auto* count) { return ebc_eb_witness(e, out, cap, count); });
    std::vector<std::string> violations;
    for (std::size_t i = 0; i < ebc_report_violation_count(r.get()); ++i)
        violations.push_back(ebc_report_violation(r.get(), i));
    const int equality = ebc_report_equality(r.get());
    const bool undecided = !dv || !iv;
    const std::string status = !violations.empty() ? "violations" : undecided ? "undecided" : "ok";
    if (o.check) {
        if (ebc_report_has_construction(r.get())) check_free_witness(o.n, construction, *lower_bound - 1);
        check_free_witness(o.n, w, ebc_eb_lower(e) - 1);
    }

    switch (o.fmt()) {
        case Format::json: {
            json j = {{"command", "verify"},
                      {"n", o.n},
                      {"factorization", ebc_report_factorization(r.get())},
                      {"omega", omega},
                      {"big_omega", big_omega},
                      {"coverage", coverage},
                      {"davenport", opt_json(dv)},
                      {"lower_bound", opt_json(lower_bound)},
                      {"construction", ebc_report_has_construction(r.get()) ? json(construction) : json(nullptr)},
                      {"construction_free", ebc_report_construction_free(r.get()) != 0},
                      {"eb_value", opt_json(iv)},
                      {"eb_lower", ebc_eb_lower(e)},
                      {"eb_upper", ebc_eb_upper(e)},
                      {"equality", equality < 0 ? json(nullptr) : json(equality == 1)},
                      {"status", status},
                      {"violations", violations}};
            if (o.witness) j["witness"] = w;
            j["budget"] = budget_json(o.budget);
            emit_json(j);
            break;
        }
        case Format::csv:
            std::cout << "n,omega,big_omega,coverage,davenport,lower_bound,eb_value,equality,status\n"
                      << csv_line({std::to_string(o.n), std::to_string(omega), std::to_string(big_omega), coverage,
                                   opt_str(dv), opt_str(lower_bound), opt_str(iv),
                                   equality < 0 ? "" : equality ? "true" : "false", status})
                      << '\n';
            break;
        case Format::human:
            std::cout << "n = " << o.n << " (" << ebc_report_factorization(r.get()) << "), coverage: " << coverage
                      << '\n';
            if (dv)
                std::cout << "D = " << *dv << ", lower bound D + Omega - omega = " << *lower_bound << '\n'
                          << "construction: " << literal(construction)
                          << (ebc_report_construction_free(r.get()) ? "  (free)" : "  (NOT free)") << '\n';
            else
                std::cout << "D undecided at budget\n";
            if (iv)
                std::cout << "I = " << *iv << '\n';
            else
                std::cout << "I in [" << ebc_eb_lower(e) << ", " << ebc_eb_upper(e) << "]\n";
            if (equality >= 0) std::cout << "I = lower bound: " << (equality ? "yes" : "no") << '\n';
            if (o.witness) std::cout << "witness: " << literal(w) << '\n';
            for (const auto& v : violations) std::cout << "violation: " << v << '\n';
            std::cout << "status: " << style.status(status) << '\n';
            break;
    }
    if (!violations.empty()) return kExitInconsistent;
    return undecided && o.strict ? kExitUndecided : kExitOk;
}

// ---- scan ----

struct RowData {
    std::uint64_t n;
    std::string factorization;
    std::uint32_t omega, big_omega;
    std::optional<std::uint64_t> davenport, lower_bound, eb_value;
    std::uint64_t davenport_lower, davenport_upper, eb_lower, eb_upper;
    bool eb_searched;
    std::string status;
    Terms witness, davenport_witness;
    std::vector<std::string> violations;
    std::string error;
    double seconds;
};

RowData read_row(const ebc_scan_row* r) {
    RowData d;
    std::uint64_t v = 0;
    d.n = ebc_scan_row_n(r);
    d.factorization = ebc_scan_row_factorization(r);
    d.omega = ebc_scan_row_omega(r);
    d.big_omega = ebc_scan_row_big_omega(r);
    if (ebc_scan_row_davenport(r, &v)) d.davenport = v;
    if (ebc_scan_row_lower_bound(r, &v)) d.lower_bound = v;
    if (ebc_scan_row_eb_value(r, &v)) d.eb_value = v;
    d.davenport_lower = ebc_scan_row_davenport_lower(r);
    d.davenport_upper = ebc_scan_row_davenport_upper(r);
    d.eb_lower = ebc_scan_row_eb_lower(r);
    d.eb_upper = ebc_scan_row_eb_upper(r);
    d.eb_searched = ebc_scan_row_eb_searched(r) != 0;
    d.status = ebc_scan_row_status(r);
    d.witness = fetch([&](auto* out, auto cap, auto* count) { return ebc_scan_row_witness(r, out, cap, count); });
    d.davenport_witness =
        fetch([&](auto* out, auto cap, auto* count) { return ebc_scan_row_davenport_witness(r, out, cap, count); });
    for (std::size_t i = 0; i < ebc_scan_row_violation_count(r); ++i) d.violations.push_back(ebc_scan_row_violation(r, i));
    d.error = ebc_scan_row_error(r);
    d.seconds = ebc_scan_row_stats(r).seconds;
    return d;
}

json row_json(const RowData& d) {
    return {{"n", d.n},
            {"factorization", d.factorization},
            {"omega", d.omega},
            {"big_omega", d.big_omega},
            {"davenport", opt_json(d.davenport)},
            {"davenport_lower", d.davenport_lower},
            {"davenport_upper", d.davenport_upper},
            {"lower_bound", opt_json(d.lower_bound)},
            {"eb_value", opt_json(d.eb_value)},
            {"eb_lower", d.eb_lower},
            {"eb_upper", d.eb_upper},
            {"eb_searched", d.eb_searched},
            {"status", d.status},
            {"witness", d.witness},
            {"davenport_witness", d.davenport_witness},
            {"violations", d.violations},
            {"error", d.error},
            {"seconds", d.seconds}};
}

const std::vector<std::string> kCsvHeader = {"n",        "factorization", "omega",    "big_omega",   "davenport",
                                             "davenport_lower", "davenport_upper", "lower_bound", "eb_value",
                                             "eb_lower", "eb_upper",      "eb_searched", "status",   "witness",
                                             "davenport_witness"};

std::string row_csv(const RowData& d) {
    return csv_line({std::to_string(d.n), d.factorization, std::to_string(d.omega), std::to_string(d.big_omega),
                     opt_str(d.davenport), std::to_string(d.davenport_lower), std::to_string(d.davenport_upper),
                     opt_str(d.lower_bound), opt_str(d.eb_value), std::to_string(d.eb_lower),
                     std::to_string(d.eb_upper), d.eb_searched ? "true" : "false", d.status, literal(d.witness),
                     literal(d.davenport_witness)});
}

std::string bracket(const std::optional<std::uint64_t>& v, std::uint64_t lo, std::uint64_t hi) {
    if (v) return std::to_string(*v);
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string row_human(const RowData& d, bool witness) {
    std::ostringstream line;
    line << pad(std::to_string(d.n), 6) << pad(d.factorization, 14) << pad(std::to_string(d.omega), 6)
         << pad(std::to_string(d.big_omega), 6) << pad(bracket(d.davenport, d.davenport_lower, d.davenport_upper), 10)
         << pad(opt_str(d.lower_bound), 12) << pad(bracket(d.eb_value, d.eb_lower, d.eb_upper), 10)
         << style.status(d.status);
    if (witness) line << "  " << literal(d.witness);
    if (!d.error.empty()) line << "  error: " << d.error;
    for (const auto& v : d.violations) line << "  violation: " << v;
    return line.str();
}

struct ScanState {
    const Options* options = nullptr;
    json rows = json::array();
    bool undecided = false;
    bool inconsistent = false;
    bool errored = false;
    std::optional<Failure> failure;
};

void on_scan_row(const ebc_scan_row* r, void* user) {
    auto& state = *static_cast<ScanState*>(user);
    const Options& o = *state.options;
    if (state.failure) return;
    try {
        const RowData d = read_row(r);
        if (d.status == "UNDECIDED") state.undecided = true;
        if (!d.violations.empty()) state.inconsistent = true;
        if (!d.error.empty()) state.errored = true;
        if (o.check && d.eb_value) {
            check_free_witness(d.n, d.witness, *d.eb_value - 1);
            if (d.davenport) check_davenport_witness(d.n, d.davenport_witness, *d.davenport - 1);
        }
        switch (o.fmt()) {
            case Format::json:
                if (o.stream)
                    emit_json(row_json(d));
                else
                    state.rows.push_back(row_json(d));
                break;
            case Format::csv: std::cout << row_csv(d) << '\n'; break;
            case Format::human: std::cout << row_human(d, o.witness) << '\n'; break;
        }
        std::cout.flush();
    } catch (const Failure& f) {
        state.failure = f;
    }
}

int cmd_scan(const Options& o) {
    ScanState state;
    state.options = &o;
    if (o.fmt() == Format::csv) std::cout << csv_line(kCsvHeader) << '\n';
    if (o.fmt() == Format::human)
        std::cout << pad("n", 6) << pad("factor", 14) << pad("omega", 6) << pad("Omega", 6) << pad("D", 10)
                  << pad("lower_bound", 12) << pad("I", 10) << "status\n";
    ok(ebc_scan(o.from, o.to, &o.budget, o.jobs, on_scan_row, &state));
    if (o.fmt() == Format::json && !o.stream) std::cout << state.rows.dump() << '\n';
    if (state.failure) throw *state.failure;
    if (state.inconsistent) return kExitInconsistent;
    if (state.errored) return kExitInternal;
    return state.undecided && o.strict ? kExitUndecided : kExitOk;
}

// ---- selftest: random threshold-length sequences through the extractors ----

int cmd_selftest(const Options& o) {
    if (o.from < 2 || o.from > o.to) throw Failure{kExitDomain, "selftest: need 2 <= from <= to"};
    std::mt19937_64 rng(o.seed);
    json rows = json::array();
    std::uint64_t total_failures = 0;
    if (o.fmt() == Format::csv) std::cout << "n,route,threshold,samples,failures\n";
    for (std::uint64_t n = o.from; n <= o.to; ++n) {
        std::uint64_t primes[64];
        std::uint32_t exps[64];
        std::size_t count = 0;
        ok(ebc_factorize(n, primes, exps, 64, &count));
        std::uint32_t omega = 0, big_omega = 0;
        ok(ebc_omega(n, &omega, &big_omega));
        const bool prime_power = count == 1;
        if (!prime_power && big_omega != omega) continue;
        ebc_davenport* raw = nullptr;
        ok(ebc_davenport_compute(n, &o.budget, &raw));
        Davenport d(raw);
        if (!ebc_davenport_decided(d.get())) continue;
        const std::uint64_t threshold = ebc_davenport_value(d.get()) + (prime_power ? exps[0] - 1 : 0);
        std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
        std::uint64_t failures = 0;
        for (std::uint64_t s = 0; s < o.samples; ++s) {
            Terms t(threshold);
            for (auto& a : t) a = pick(rng);
            Terms w(t.size());
            std::size_t len = 0;
            if (ebc_extract_witness(d.get(), t.data(), t.size(), nullptr, w.data(), w.size(), &len) != EBC_OK) {
                ++failures;
                continue;
            }
            w.resize(len);
            std::uint64_t product = 0;
            int idem = 0;
            if (w.empty() || ebc_pi(n, w.data(), w.size(), &product) != EBC_OK ||
                ebc_is_idempotent(product, n, &idem) != EBC_OK || !idem)
                ++failures;
        }
        total_failures += failures;
        const std::string route = prime_power ? "prime_power" : "squarefree";
        switch (o.fmt()) {
            case Format::json:
                rows.push_back({{"n", n}, {"route", route}, {"threshold", threshold}, {"samples", o.samples},
                                {"failures", failures}});
                break;
            case Format::csv:
                std::cout << n << ',' << route << ',' << threshold << ',' << o.samples << ',' << failures << '\n';
                break;
            case Format::human:
                std::cout << pad(std::to_string(n), 6) << pad(route, 13) << "|T| = " << pad(std::to_string(threshold), 5)
                          << o.samples << " samples, " << failures << " failures\n";
                break;
        }
    }
    if (o.fmt() == Format::json)
        emit_json({{"command", "selftest"}, {"seed", o.seed}, {"rows", rows}, {"failures", total_failures}});
    return total_failures ? kExitInconsistent : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    ebc_budget_default(&o.budget);
    const char* no_color = std::getenv("NO_COLOR");
    style.on = (!no_color || !*no_color) && isatty(STDOUT_FILENO);

    CLI::App app{"Exact Davenport and Erdos-Burgess constants of Z_n"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}))->capture_default_str();
    app.add_flag("--witness", o.witness, "Print witnesses");
    app.add_flag("--check", o.check, "Re-verify every emitted witness through the library");
    app.add_flag("--strict", o.strict, "Exit with status 3 when a result is undecided at budget");
    app.add_option("--max-states", o.budget.max_states, "Memoized search states per search")->capture_default_str();
    app.add_option("--max-seconds", o.budget.max_seconds, "Wall-clock seconds per search, 0 for no limit")
        ->capture_default_str();
    app.footer("Exit status: 0 ok, 2 domain or input error, 3 undecided with --strict, 4 internal inconsistency.\n"
               "Human output is colored on a terminal unless NO_COLOR is set.");

    auto add_n = [&](CLI::App* sub) { sub->add_option("n", o.n, "Modulus")->required(); };
    auto* idem = app.add_subcommand("idempotents", "Idempotents of Z_n");
    add_n(idem);
    auto* dav = app.add_subcommand("davenport", "Davenport constant of (Z/nZ)^x");
    add_n(dav);
    auto* eb = app.add_subcommand("eb", "Erdos-Burgess constant I(S_{Z_n})");
    add_n(eb);
    auto* cons = app.add_subcommand("construct", "The lower-bound construction");
    add_n(cons);
    auto* ext = app.add_subcommand("extract", "Subsequence with idempotent product from a long sequence");
    add_n(ext);
    ext->add_option("--seq", o.seq, "Sequence literal, e.g. 5,7,2")->required();
    ext->add_flag("--reduce", o.reduce, "Reduce terms >= n mod n instead of rejecting them");
    auto* ver = app.add_subcommand("verify", "Check the lower bound and the equality cases for n");
    add_n(ver);
    auto* scan = app.add_subcommand("scan", "Table of D, lower bound and I over a range of n");
    scan->add_option("--from", o.from, "First modulus")->capture_default_str();
    scan->add_option("--to", o.to, "Last modulus")->capture_default_str();
    scan->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    scan->add_flag("--stream", o.stream, "With --format json, one object per line (NDJSON)");
    auto* self = app.add_subcommand("selftest", "Random threshold-length sequences through the extractors");
    self->add_option("--from", o.from, "First modulus")->capture_default_str();
    self->add_option("--to", o.to, "Last modulus")->capture_default_str();
    self->add_option("--samples", o.samples, "Sequences per modulus")->capture_default_str();
    self->add_option("--seed", o.seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitDomain;
    }

    try {
        if (*idem) return cmd_idempotents(o);
        if (*dav) return cmd_davenport(o);
        if (*eb) return cmd_eb(o);
        if (*cons) return cmd_construct(o);
        if (*ext) return cmd_extract(o);
        if (*ver) return cmd_verify(o);
        if (*scan) return cmd_scan(o);
        if (*self) return cmd_selftest(o);
    } catch (const Failure& f) {
        std::cout.flush();
        std::cerr << "ebc: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "ebc: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
