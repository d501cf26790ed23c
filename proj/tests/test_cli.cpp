#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "supertrace/identities.hpp"

using namespace supertrace;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = supertrace::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verified identities exit 0, failures 1, usage errors 2") {
    CHECK(run_cli({"identity", "verify", "--n", "2", "--e", "0", "--f", "3"}).code == 0);
    CHECK(run_cli({"identity", "verify", "--n", "1", "--e", "0", "--f", "2", "--size", "2"}).code == 1);
    CHECK(run_cli({"identity", "verify", "--n", "2", "--e", "9", "--f", "3"}).code == 2);
    CHECK(run_cli({"identity", "verify"}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"ranks", "--m", "9", "--n", "2"}).code == 2);  // resource guard
    auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("identity") != std::string::npos);
}

TEST_CASE("the index command prints the euler product") {
    auto r = run_cli({"index", "--n", "2", "--order", "8"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 - q - q^2 + q^5 + q^7\n");
}

TEST_CASE("byte-identical output across runs and thread budgets") {
    std::vector<std::string> args{"ranks", "--m", "4", "--n", "2", "--format", "json"};
    auto a = run_cli(args), b = run_cli(args);
    CHECK(a.out == b.out);
    auto threaded = run_cli({"ranks", "--m", "4", "--n", "2", "--format", "json", "--threads", "4"});
    CHECK(threaded.out == a.out);
    auto c1 = run_cli({"charges", "--lmax", "6", "--rank-at", "2", "--traceless"});
    auto c4 = run_cli({"charges", "--lmax", "6", "--rank-at", "2", "--traceless", "--threads", "4"});
    CHECK(c1.out == c4.out);
}

TEST_CASE("json identity output round-trips through the parser") {
    auto r = run_cli({"identity", "gen", "--n", "2", "--e", "1", "--f", "2", "--kind", "CH",
                  "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["identity"]["kind"] == "CH");
    auto expr = cli::detail::expression_from_json_text(j["terms"].dump());
    CHECK(expr == identities::gen_CH(1, 2, 2));
}

TEST_CASE("charge table output carries the printed dimensions") {
    auto r = run_cli({"charges", "--lmax", "7", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    std::vector<int> bos, ferm;
    for (auto& row : j) {
        bos.push_back(row["dim_bosonic"].get<int>());
        ferm.push_back(row["dim_fermionic"].get<int>());
    }
    CHECK(bos == std::vector<int>{0, 0, 1, 1, 3, 6, 11});
    CHECK(ferm == bos);
}

TEST_CASE("series command reports the reading comparison") {
    auto r = run_cli({"series", "--mode", "equivariants", "--n", "2", "--order", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("corrected reading") != std::string::npos);
    CHECK(r.out.find("matches") != std::string::npos);
    auto t = run_cli({"series", "--mode", "traceless", "--n", "2", "--order", "7"});
    CHECK(t.out.find("first deficit") != std::string::npos);
    auto f = run_cli({"series", "--mode", "free", "--order", "7", "--format", "json"});
    auto j = nlohmann::json::parse(f.out);
    CHECK(j["coefficients"] == nlohmann::json::parse("[1,0,0,1,1,3,6,11]"));
}

TEST_CASE("deduction and dynkin commands verify") {
    CHECK(run_cli({"deduce-11", "--n", "2"}).code == 0);
    CHECK(run_cli({"dynkin", "--n", "2"}).code == 0);
    CHECK(run_cli({"dynkin", "--n", "4"}).code == 2);  // out of the supported range
    CHECK(run_cli({"andrews", "--n", "2", "--order", "6"}).code == 0);
    CHECK(run_cli({"codim", "--m", "5", "--n", "2"}).out.find("42") != std::string::npos);
    CHECK(run_cli({"goodperms", "--m", "6", "--d", "3"}).out.find("132") != std::string::npos);
}
