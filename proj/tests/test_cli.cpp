#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "NO_COLOR=1") {
    const std::string cmd = env + " " + EBC_CLI_PATH + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (std::size_t k = fread(buf, 1, sizeof buf, pipe)) out.append(buf, k);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// Minimal CSV splitter for quoted fields without embedded quotes.
std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out{""};
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) out.emplace_back();
        else out.back() += c;
    }
    return out;
}

}  // namespace

TEST_CASE("eb 4 --witness") {
    const auto r = run("eb 4 --witness");
    CHECK(r.code == 0);
    CHECK(r.out.find("I = 3") != std::string::npos);
    CHECK(r.out.find("witness: 3,2") != std::string::npos);
    const auto j = json::parse(run("eb 4 --witness --format json").out);
    CHECK(j["eb_value"] == 3);
    CHECK(j["witness"] == json::array({3, 2}));
    CHECK(j["status"] == "exact");
    CHECK(j["lower_bound"] == 3);
    CHECK(j["davenport"] == 2);
    CHECK(j["omega"] == 1);
    CHECK(j["big_omega"] == 2);
}

TEST_CASE("idempotents 12 --format json") {
    const auto r = run("idempotents 12 --format json");
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["members"] == json::array({0, 1, 4, 9}));
    CHECK(j["n"] == 12);
    CHECK(j["omega"] == 2);
}

TEST_CASE("scan --from 2 --to 10") {
    const auto r = run("scan --from 2 --to 10 --format json");
    CHECK(r.code == 0);
    const auto rows = json::parse(r.out);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i]["n"] == i + 2);
        CHECK(rows[i]["status"].get<std::string>().rfind("THEOREM_", 0) == 0);
    }
}

TEST_CASE("NDJSON stream and CSV carry the same numbers as JSON") {
    const auto array = json::parse(run("scan --from 2 --to 14 --format json --jobs 2").out);
    const auto stream = lines(run("scan --from 2 --to 14 --format json --stream").out);
    const auto csv = lines(run("scan --from 2 --to 14 --format csv").out);
    REQUIRE(stream.size() == array.size());
    REQUIRE(csv.size() == array.size() + 1);
    const auto header = csv_split(csv[0]);
    for (std::size_t i = 0; i < array.size(); ++i) {
        const auto s = json::parse(stream[i]);
        const auto cells = csv_split(csv[i + 1]);
        REQUIRE(cells.size() == header.size());
        for (std::size_t c = 0; c < header.size(); ++c) {
            const auto& key = header[c];
            const auto& v = array[i][key];
            CHECK(s[key] == v);
            std::string expected;
            if (v.is_null()) expected = "";
            else if (v.is_array()) {
                for (std::size_t k = 0; k < v.size(); ++k) expected += (k ? "," : "") + std::to_string(v[k].get<std::uint64_t>());
            } else if (v.is_string()) expected = v.get<std::string>();
            else expected = v.dump();
            CHECK_MESSAGE(cells[c] == expected, key);
        }
    }
}

TEST_CASE("--check re-verifies emitted witnesses") {
    CHECK(run("scan --from 2 --to 24 --check").code == 0);
    CHECK(run("eb 12 --check --witness").code == 0);
    CHECK(run("davenport 21 --check --witness").code == 0);
    CHECK(run("construct 36 --check").code == 0);
    CHECK(run("verify 18 --check").code == 0);
    CHECK(run("idempotents 210 --check").code == 0);
    CHECK(run("extract 9 --seq 3,4,3,7,2,5,8 --check").code == 0);
}

TEST_CASE("emitted witnesses round-trip") {
    const auto j = json::parse(run("construct 12 --format json").out);
    CHECK(j["witness"] == json::array({5, 7, 2}));
    std::string literal;
    for (const auto& v : j["witness"]) literal += (literal.empty() ? "" : ",") + std::to_string(v.get<int>());
    const auto e12 = json::parse(run("eb 12 --witness --format json").out);
    CHECK(e12["eb_value"].get<std::size_t>() == j["witness"].size() + 1);
    CHECK(run("extract 12 --seq " + literal).code == 2);  // 12 is neither a prime power nor squarefree
    const auto e = json::parse(run("extract 8 --seq 3,5,2,2,7 --format json --check").out);
    CHECK(e["route"] == "prime_power");
    const auto p = e["product"].get<std::uint64_t>();
    CHECK(p * p % 8 == p);
}

TEST_CASE("exit codes") {
    CHECK(run("eb 1").code == 2);
    CHECK(run("davenport 0").code == 2);
    CHECK(run("davenport 1000003").code == 2);
    CHECK(run("extract 12 --seq 5,x").code == 2);
    CHECK(run("extract 12 --seq 5,12").code == 2);
    CHECK(run("extract 12 --seq 5,12 --reduce").code == 2);  // 12 is not covered by an extractor
    CHECK(run("extract 6 --seq 5,12 --reduce").code == 0);
    CHECK(run("extract 8 --seq 3").code == 2);
    CHECK(run("scan --from 5 --to 2").code == 2);
    CHECK(run("eb").code == 2);
    CHECK(run("frobnicate 3").code == 2);
    CHECK(run("eb 12 --format xml").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("davenport 91 --max-seconds 0.2").code == 0);
    CHECK(run("davenport 91 --max-seconds 0.2 --strict").code == 3);
    CHECK(run("construct 91 --max-seconds 0.2 --strict").code == 3);
    CHECK(run("selftest --from 2 --to 30 --samples 20 --seed 3").code == 0);
}

TEST_CASE("undecided output carries bounds") {
    const auto j = json::parse(run("davenport 91 --max-seconds 0.2 --format json --witness").out);
    CHECK(j["status"] == "undecided");
    CHECK(j["davenport"].is_null());
    CHECK(j["lower"].get<int>() >= 17);
    CHECK(j["upper"].get<int>() <= 72);
    CHECK(j["witness"].size() + 1 == j["lower"].get<std::size_t>());
    CHECK(j["budget"]["max_seconds"] == 0.2);
}

TEST_CASE("selftest is reproducible from its seed") {
    const auto a = run("selftest --from 2 --to 20 --samples 30 --seed 5 --format json").out;
    const auto b = run("selftest --from 2 --to 20 --samples 30 --seed 5 --format json").out;
    CHECK(a == b);
    CHECK(json::parse(a)["failures"] == 0);
}

TEST_CASE("color only without NO_COLOR and on a terminal") {
    // Output is a pipe here, so no escapes either way.
    CHECK(run("scan --from 2 --to 5", "").out.find('\033') == std::string::npos);
    CHECK(run("scan --from 2 --to 5").out.find('\033') == std::string::npos);
}
