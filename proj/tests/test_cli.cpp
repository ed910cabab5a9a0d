#include <doctest.h>

#include <map>
#include <sstream>

#include <json.hpp>

#include "trirec/cli.hpp"
#include "trirec/fast_eval.hpp"
#include "trirec/identities.hpp"

using namespace trirec;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("term examples") {
    const auto r = run({"term", "--preset", "tribonacci", "-n", "10"});
    CHECK(r.code == 0);
    CHECK(r.out == "149\n");
    CHECK(r.err.empty());

    for (const char* m : {"iter", "fast", "matrix"}) {
        CHECK(run({"term", "--preset", "perrin", "-n", "9", "--method", m}).out == "12\n");
        CHECK(run({"term", "--params", "0", "1", "1", "1", "1", "1", "-n", "-5", "--method", m}).out == "2\n");
    }
    CHECK(run({"term", "--preset", "tribonacci", "-n", "30", "--mod", "7"}).out ==
          std::to_string(29249425 % 7) + "\n");
    CHECK(run({"term", "--preset", "u", "--rst", "2", "-1/2", "3", "-n", "4"}).out == "9\n");
    CHECK(run({"term", "--preset", "generalized-tribonacci", "--abc", "1", "1", "1", "-n", "3"}).out == "3\n");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"term", "--preset", "tribonacci", "-n", "10", "--mod", "0"}).code == 2);
    CHECK(run({"term", "--preset", "tribonacci", "-n", "10", "--mod", "15"}).code == 2);
    CHECK(run({"term", "--preset", "tribonacci", "-n", "10", "--mod", "x"}).code == 2);
    CHECK(run({"term", "-n", "10"}).code == 2);
    CHECK(run({"term", "--preset", "tribonacci", "--params", "0", "1", "1", "1", "1", "1", "-n", "1"}).code == 2);
    CHECK(run({"term", "--params", "0", "1", "1/0", "1", "1", "1", "-n", "1"}).code == 2);
    CHECK(run({"term", "--params", "0", "1", "one", "1", "1", "1", "-n", "1"}).code == 2);
    CHECK(run({"term", "--preset", "nonsense", "-n", "1"}).code == 2);
    CHECK(run({"term", "--preset", "tribonacci", "--abc", "1", "2", "3", "-n", "1"}).code == 2);
    CHECK(run({"term", "--preset", "tribonacci", "-n", "1", "--method", "slow"}).code == 2);
    CHECK(run({"sum", "--preset", "tribonacci", "--k", "4", "--mod", "7"}).code == 2);
    CHECK(run({"table", "--preset", "tribonacci", "--csv", "--json"}).code == 2);
    CHECK(run({"roots", "--preset", "tribonacci", "--csv"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"sum", "--help"}).code == 0);
}

TEST_CASE("domain errors exit 1 with the error name") {
    auto r = run({"term", "--params", "0", "1", "1", "1", "1", "0", "-n", "-1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("NonInvertibleT") != std::string::npos);

    r = run({"roots", "--params", "0", "1", "1", "1", "1", "-1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("RepeatedRoots") != std::string::npos);

    r = run({"check", "--identity", "NO_SUCH_ID"});
    CHECK(r.code == 1);
    CHECK(r.err.find("UnknownIdentity") != std::string::npos);

    r = run({"table", "--preset", "tribonacci", "--from", "5", "--to", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("EmptyRange") != std::string::npos);
}

TEST_CASE("table output and round trip") {
    auto r = run({"table", "--preset", "tribonacci", "--from", "0", "--to", "10", "--csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("n,value\n0,0\n1,1\n", 0) == 0);
    CHECK(r.out.find("10,149\n") != std::string::npos);

    const auto p = make_rational_params(Rational(1, 2), Rational(-3), Rational(2, 3), Rational(1), Rational(-1, 4),
                                        Rational(5, 2));
    r = run({"table", "--params", "1/2", "-3", "2/3", "1", "-1/4", "5/2", "--from", "-6", "--to", "6", "--json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["terms"].size() == 13);
    for (const auto& row : doc["terms"]) {
        CHECK(Rational::parse(row["value"].get<std::string>()) == term_iter(p, row["n"].get<long>()));
    }
}

TEST_CASE("sum subcommand") {
    auto r = run({"sum", "--preset", "tribonacci", "--k", "4", "--method", "both"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("closed: 8 [closed-form]") != std::string::npos);
    CHECK(r.out.find("agree:  yes") != std::string::npos);

    r = run({"sum", "--params", "0", "1", "1", "1", "-1", "1", "--k", "5", "--json", "--method", "both"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["closed"]["method"] == "direct-fallback");
    CHECK(doc["closed"]["singular"] == true);
    CHECK(doc["agree"] == true);

    r = run({"sum", "--preset", "tribonacci", "--k", "3", "--h", "1/2", "--kind", "v2", "--method", "both", "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["agree"] == true);
    r = run({"sum", "--preset", "tribonacci", "--k", "3", "--kind", "uv", "--n", "-2", "--m", "3", "--method", "both",
             "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["agree"] == true);

    r = run({"sum", "--preset", "tribonacci", "--k", "0", "--gf", "--order", "10"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("gf: (h) / (1 - h - h^2 - h^3)") != std::string::npos);
    CHECK(r.out.find("expansion: 0 1 1 2 4 7 13 24 44 81 149\n") != std::string::npos);
}

TEST_CASE("check report matches the in-memory suite") {
    const auto r = run({"check", "--identity", "all", "--trials", "50", "--seed", "42", "--json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["seed"] == 42);
    CHECK(doc["config"]["trials"] == 50);

    SuiteConfig cfg;
    cfg.seed = 42;
    cfg.trials = 50;
    const Report rep = run_suite(cfg);
    REQUIRE(doc["results"].size() == rep.results.size());
    for (std::size_t i = 0; i < rep.results.size(); ++i) {
        const auto& want = rep.results[i];
        const auto& got = doc["results"][i];
        CHECK(got["id"] == want.id);
        CHECK(got["passes"] == want.passes);
        CHECK(got["fails"] == want.fails);
        CHECK(got["skips"] == want.skips);
        if (!want.expected_fail) CHECK(got["fails"] == 0);
        REQUIRE(got["failures"].size() == want.failures.size());
        for (std::size_t j = 0; j < want.failures.size(); ++j) {
            const auto& f = got["failures"][j];
            CHECK(Rational::parse(f["lhs"].get<std::string>()) == want.failures[j].lhs);
            CHECK(Rational::parse(f["rhs"].get<std::string>()) == want.failures[j].rhs);
            for (const auto& [k, v] : want.failures[j].bindings.rendered()) CHECK(f["bindings"][k] == v);
        }
    }

    const auto list = run({"check", "--list", "--json"});
    REQUIRE(list.code == 0);
    CHECK(json::parse(list.out).size() == identity_registry().size());
}

TEST_CASE("identical argv gives identical output") {
    const std::vector<std::vector<std::string>> cases{
        {"check", "--trials", "10", "--seed", "9", "--json"},
        {"check", "--trials", "10", "--seed", "9", "--threads", "1"},
        {"table", "--preset", "padovan", "--from", "-20", "--to", "20"},
        {"sum", "--preset", "perrin", "--k", "6", "--h", "-2/3", "--gf", "--method", "both"},
        {"roots", "--preset", "padovan", "--json", "-n", "-7"},
        {"term", "--preset", "tribonacci", "-n", "100000", "--json"},
    };
    for (const auto& argv : cases) {
        const auto a = run(argv), b = run(argv);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    // different thread counts, same report
    CHECK(run({"check", "--trials", "10", "--seed", "9", "--threads", "1"}).out ==
          run({"check", "--trials", "10", "--seed", "9", "--threads", "4"}).out);
}

TEST_CASE("roots json") {
    const auto r = run({"roots", "--preset", "tribonacci", "--json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(std::abs(doc["roots"][0]["re"].get<double>() - 1.8392867552) < 1e-8);
    CHECK(doc["discriminant"].get<double>() == -44.0);
    for (const auto& d : doc["diagnostics"]) CHECK(d["ok"] == true);
}

TEST_CASE("bench counts") {
    const auto counts = [](const std::vector<std::string>& argv) {
        const auto r = run(argv);
        REQUIRE(r.code == 0);
        std::map<std::pair<long, std::string>, std::uint64_t> out;
        const json doc = json::parse(r.out);
        for (const auto& row : doc["rows"]) {
            out[{row["index"].get<long>(), row["method"].get<std::string>()}] = row["multiplications"];
        }
        return out;
    };
    auto c = counts({"bench", "--preset", "tribonacci", "--indices", "1", "--json"});
    for (const char* m : {"iter", "fast", "matrix"}) CHECK(c[{1, m}] <= 10);

    c = counts({"bench", "--preset", "tribonacci", "--mod", "1000000007", "--indices", "1000000", "--methods", "iter",
                "fast", "--json"});
    CHECK(c[{1000000, "iter"}] >= 1000000);
    CHECK(c[{1000000, "fast"}] <= 64 * 20);

    c = counts({"bench", "--preset", "tribonacci", "--mod", "1000000007", "--indices", "1024", "2048", "1048576",
                "2097152", "--methods", "fast", "--json"});
    const auto step1 = static_cast<long>(c[{2048, "fast"}]) - static_cast<long>(c[{1024, "fast"}]);
    const auto step2 = static_cast<long>(c[{2097152, "fast"}]) - static_cast<long>(c[{1048576, "fast"}]);
    CHECK(step1 == step2);

    const auto guard = run({"bench", "--preset", "tribonacci", "--indices", "2000000"});
    CHECK(guard.code == 1);
    CHECK(guard.err.find("BignumGuard") != std::string::npos);
    CHECK(run({"bench", "--preset", "tribonacci", "--indices", "2000000", "--methods", "fast", "--mod", "101"}).code ==
          0);

    const auto csv = run({"bench", "--preset", "tribonacci", "--indices", "10", "--csv"});
    CHECK(csv.out.rfind("index,method,multiplications,seconds,value\n", 0) == 0);
}
